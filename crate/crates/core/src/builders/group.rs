use std::any::Any;

use serde::{Deserialize, Serialize};

use crate::error::{FusionError, Result};
use crate::fusion::label::{split_top_level, strip_enclosing};
use crate::fusion::ring::{Family, FusionRing, FusionRule};
use crate::fusion::Label;
use crate::scalar::Dimension;

/// Discrete groups supported as fusion rings (`d ≡ 1`, `g ⊗ h = gh`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `Z^rank`.
    Integers { rank: u32 },
    /// `Z/order`.
    Cyclic { order: u32 },
    /// Free group on `rank` generators, written `a, b, ...` with inverses `A, B, ...`.
    Free { rank: u32 },
    /// Finite group by multiplication table: `table[g][h]` is the index of `gh`.
    Table { table: Vec<Vec<u32>> },
}

#[derive(Debug, Clone)]
struct FiniteTable {
    table: Vec<Vec<u32>>,
    identity: u32,
    inverse: Vec<u32>,
}

impl FiniteTable {
    fn new(table: Vec<Vec<u32>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(FusionError::Parameter("group table must be a non-empty square".into()));
        }
        if table.iter().flatten().any(|&x| x as usize >= n) {
            return Err(FusionError::Parameter("group table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] as usize == g && table[g][e] as usize == g))
            .ok_or_else(|| FusionError::Parameter("group table has no identity".into()))? as u32;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = table[table[a][b] as usize][c];
                    let right = table[a][table[b][c] as usize];
                    if left != right {
                        return Err(FusionError::Parameter(format!(
                            "group table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n as u32)
                    .find(|&h| table[g][h as usize] == identity)
                    .ok_or_else(|| FusionError::Parameter(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(FiniteTable {
            table,
            identity,
            inverse,
        })
    }
}

#[derive(Debug, Clone)]
enum GroupKind {
    Integers(u32),
    Cyclic(u32),
    Free(u32),
    Finite(FiniteTable),
}

/// Group ring of a discrete group.
#[derive(Debug, Clone)]
pub struct GroupRing {
    kind: GroupKind,
}

fn reduce_free(word: &mut Vec<i32>, letter: i32) {
    if word.last() == Some(&-letter) {
        word.pop();
    } else {
        word.push(letter);
    }
}

fn lattice_ball(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    if rank == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in -radius..=radius {
        for mut rest in lattice_ball(rank - 1, radius - first.abs()) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn parse_int(text: &str) -> Result<i64> {
    text.trim()
        .parse::<i64>()
        .map_err(|_| FusionError::parse("label", format!("expected an integer, got `{text}`")))
}

impl GroupRing {
    fn vector(&self, a: &Label) -> Vec<i64> {
        match a {
            Label::Int(k) => vec![*k],
            Label::Lattice(v) => v.clone(),
            _ => unreachable!(),
        }
    }

    fn from_vector(&self, v: Vec<i64>) -> Label {
        if v.len() == 1 {
            Label::Int(v[0])
        } else {
            Label::Lattice(v)
        }
    }

    fn parse_free(rank: u32, text: &str) -> Result<Label> {
        let t = text.trim();
        if t.is_empty() || t == "1" || (t == "e" && rank < 5) {
            return Ok(Label::FreeGroup(vec![]));
        }
        let chars: Vec<char> = t.chars().filter(|c| !c.is_whitespace()).collect();
        let mut word = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (gen, mut sign) = if c.is_ascii_lowercase() {
                (c as i32 - 'a' as i32 + 1, 1)
            } else if c.is_ascii_uppercase() {
                (c as i32 - 'A' as i32 + 1, -1)
            } else {
                return Err(FusionError::parse("label", format!("bad free-group letter `{c}`")));
            };
            if gen as u32 > rank {
                return Err(FusionError::parse("label", format!("generator `{c}` exceeds rank {rank}")));
            }
            i += 1;
            let mut power = 1i64;
            if i < chars.len() && chars[i] == '^' {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && (chars[end] == '-' || chars[end].is_ascii_digit()) {
                    end += 1;
                }
                let exp: String = chars[start..end].iter().collect();
                power = parse_int(&exp)?;
                i = end;
            }
            if power < 0 {
                sign = -sign;
                power = -power;
            }
            for _ in 0..power {
                reduce_free(&mut word, sign * gen);
            }
        }
        Ok(Label::FreeGroup(word))
    }
}

impl FusionRule for GroupRing {
    fn name(&self) -> String {
        match &self.kind {
            GroupKind::Integers(1) => "Z".into(),
            GroupKind::Integers(d) => format!("Z^{d}"),
            GroupKind::Cyclic(n) => format!("Z/{n}"),
            GroupKind::Free(k) => format!("F_{k}"),
            GroupKind::Finite(t) => format!("G(order {})", t.table.len()),
        }
    }

    fn family(&self) -> Family {
        Family::Group
    }

    fn unit(&self) -> Label {
        match &self.kind {
            GroupKind::Integers(1) | GroupKind::Cyclic(_) => Label::Int(0),
            GroupKind::Integers(d) => Label::Lattice(vec![0; *d as usize]),
            GroupKind::Free(_) => Label::FreeGroup(vec![]),
            GroupKind::Finite(t) => Label::Element(t.identity),
        }
    }

    fn contains(&self, a: &Label) -> bool {
        match (&self.kind, a) {
            (GroupKind::Integers(1), Label::Int(_)) => true,
            (GroupKind::Integers(d), Label::Lattice(v)) => *d >= 2 && v.len() == *d as usize,
            (GroupKind::Cyclic(n), Label::Int(k)) => *k >= 0 && *k < *n as i64,
            (GroupKind::Free(r), Label::FreeGroup(w)) => {
                w.iter().all(|&x| x != 0 && x.unsigned_abs() <= *r)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupKind::Finite(t), Label::Element(g)) => (*g as usize) < t.table.len(),
            _ => false,
        }
    }

    fn conjugate(&self, a: &Label) -> Label {
        match (&self.kind, a) {
            (GroupKind::Cyclic(n), Label::Int(k)) => Label::Int((*n as i64 - k) % *n as i64),
            (GroupKind::Integers(_), _) => self.from_vector(self.vector(a).iter().map(|x| -x).collect()),
            (GroupKind::Free(_), Label::FreeGroup(w)) => {
                Label::FreeGroup(w.iter().rev().map(|x| -x).collect())
            }
            (GroupKind::Finite(t), Label::Element(g)) => Label::Element(t.inverse[*g as usize]),
            _ => unreachable!(),
        }
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        let product = match (&self.kind, a, b) {
            (GroupKind::Cyclic(n), Label::Int(x), Label::Int(y)) => Label::Int((x + y) % *n as i64),
            (GroupKind::Integers(_), _, _) => {
                let (u, v) = (self.vector(a), self.vector(b));
                self.from_vector(u.iter().zip(&v).map(|(x, y)| x + y).collect())
            }
            (GroupKind::Free(_), Label::FreeGroup(u), Label::FreeGroup(v)) => {
                let mut w = u.clone();
                for &x in v {
                    reduce_free(&mut w, x);
                }
                Label::FreeGroup(w)
            }
            (GroupKind::Finite(t), Label::Element(g), Label::Element(h)) => {
                Label::Element(t.table[*g as usize][*h as usize])
            }
            _ => unreachable!(),
        };
        Ok(vec![(product, 1)])
    }

    fn dimension(&self, _a: &Label) -> Dimension {
        Dimension::one()
    }

    fn level(&self, a: &Label) -> usize {
        match (&self.kind, a) {
            (GroupKind::Cyclic(n), Label::Int(k)) => (*k).min(*n as i64 - k) as usize,
            (GroupKind::Integers(_), Label::Int(k)) => k.unsigned_abs() as usize,
            (GroupKind::Integers(_), Label::Lattice(v)) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            (GroupKind::Free(_), Label::FreeGroup(w)) => w.len(),
            (GroupKind::Finite(t), Label::Element(g)) => usize::from(*g != t.identity),
            _ => 0,
        }
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        match &self.kind {
            GroupKind::Integers(d) => lattice_ball(*d as usize, level as i64)
                .into_iter()
                .map(|v| self.from_vector(v))
                .collect(),
            GroupKind::Cyclic(n) => (0..*n as i64)
                .map(Label::Int)
                .filter(|l| self.level(l) <= level)
                .collect(),
            GroupKind::Free(r) => {
                let mut out = vec![Label::FreeGroup(vec![])];
                let mut frontier = vec![Vec::<i32>::new()];
                for _ in 0..level {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for g in 1..=*r as i32 {
                            for letter in [g, -g] {
                                if w.last() != Some(&-letter) {
                                    let mut nw = w.clone();
                                    nw.push(letter);
                                    next.push(nw);
                                }
                            }
                        }
                    }
                    out.extend(next.iter().cloned().map(Label::FreeGroup));
                    frontier = next;
                }
                out
            }
            GroupKind::Finite(t) => (0..t.table.len() as u32)
                .map(Label::Element)
                .filter(|l| self.level(l) <= level)
                .collect(),
        }
    }

    fn label_count(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Cyclic(n) => Some(*n as usize),
            GroupKind::Finite(t) => Some(t.table.len()),
            _ => None,
        }
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let t = text.trim();
        match &self.kind {
            GroupKind::Integers(1) => {
                if t == "e" {
                    Ok(Label::Int(0))
                } else {
                    parse_int(t).map(Label::Int)
                }
            }
            GroupKind::Integers(_) => {
                let inner = strip_enclosing(t, '(', ')').unwrap_or(t);
                let v = split_top_level(inner, ',')
                    .into_iter()
                    .map(parse_int)
                    .collect::<Result<Vec<i64>>>()?;
                Ok(Label::Lattice(v))
            }
            GroupKind::Cyclic(n) => {
                if t == "e" {
                    return Ok(Label::Int(0));
                }
                Ok(Label::Int(parse_int(t)?.rem_euclid(*n as i64)))
            }
            GroupKind::Free(r) => Self::parse_free(*r, t),
            GroupKind::Finite(table) => {
                if t == "e" {
                    return Ok(Label::Element(table.identity));
                }
                let digits = t.strip_prefix('g').unwrap_or(t);
                digits
                    .parse::<u32>()
                    .map(Label::Element)
                    .map_err(|_| FusionError::parse("label", format!("expected g<index>, got `{text}`")))
            }
        }
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

pub fn build_group_ring(spec: &GroupSpec) -> Result<FusionRing> {
    let kind = match spec {
        GroupSpec::Integers { rank } if *rank >= 1 => GroupKind::Integers(*rank),
        GroupSpec::Cyclic { order } if *order >= 1 => GroupKind::Cyclic(*order),
        GroupSpec::Free { rank } if (1..=26).contains(rank) => GroupKind::Free(*rank),
        GroupSpec::Table { table } => GroupKind::Finite(FiniteTable::new(
            table.clone(),
        )?),
        other => return Err(FusionError::Parameter(format!("malformed group spec {other:?}"))),
    };
    Ok(FusionRing::new(GroupRing { kind }))
}
