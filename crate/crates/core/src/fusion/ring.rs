use std::any::Any;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, RwLock};

use crate::error::{FusionError, Result};
use crate::fusion::label::Label;
use crate::scalar::Dimension;

/// Which construction produced a ring. Analysis routines use this to pick
/// exact procedures (polynomial sup-norms for TLJ, eigensolves for finite rings).
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    TljInfinite { lambda_inv: f64 },
    TljFinite { m: u32 },
    Group,
    SpecialUnitary { n: u32, q: f64 },
    Product,
    FreeProduct,
    Subring,
}

/// The combinatorial data of a fusion ring. Implementations may assume their
/// label arguments have already passed [`FusionRule::contains`].
pub trait FusionRule: Send + Sync + fmt::Debug + Any {
    fn name(&self) -> String;

    fn family(&self) -> Family;

    fn unit(&self) -> Label;

    fn contains(&self, a: &Label) -> bool;

    fn conjugate(&self, a: &Label) -> Label;

    /// Decomposition of `a ⊗ b`; order and duplicates do not matter.
    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>>;

    fn dimension(&self, a: &Label) -> Dimension;

    /// Word length in the designated generators.
    fn level(&self, a: &Label) -> usize;

    /// Every label of level at most `level`, in any order.
    fn labels_up_to_level(&self, level: usize) -> Vec<Label>;

    /// Number of irreducibles, `None` when infinite.
    fn label_count(&self) -> Option<usize> {
        None
    }

    fn parse_label(&self, text: &str) -> Result<Label>;

    fn as_any(&self) -> &dyn Any;
}

/// Decomposition of a tensor product into irreducibles, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionOutcome {
    terms: Vec<(Label, u64)>,
}

impl FusionOutcome {
    pub fn terms(&self) -> &[(Label, u64)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, u64)> {
        self.terms.iter().map(|(l, m)| (l, *m))
    }

    pub fn multiplicity(&self, label: &Label) -> u64 {
        self.terms
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

struct RingInner {
    id: u64,
    rule: Box<dyn FusionRule>,
    fusion_cache: RwLock<HashMap<(Label, Label), Arc<FusionOutcome>>>,
    dim_cache: RwLock<HashMap<Label, Dimension>>,
}

/// Shared handle to an immutable fusion ring with memoized fusion and dimensions.
///
/// Cloning is cheap; clones refer to the same ring and share its caches.
#[derive(Clone)]
pub struct FusionRing {
    inner: Arc<RingInner>,
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionRing")
            .field("id", &self.inner.id)
            .field("name", &self.name())
            .finish()
    }
}

impl FusionRing {
    pub fn new<R: FusionRule>(rule: R) -> Self {
        FusionRing {
            inner: Arc::new(RingInner {
                id: NEXT_RING_ID.fetch_add(1, AtomicOrdering::Relaxed),
                rule: Box::new(rule),
                fusion_cache: RwLock::new(HashMap::new()),
                dim_cache: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn name(&self) -> String {
        self.inner.rule.name()
    }

    pub fn family(&self) -> Family {
        self.inner.rule.family()
    }

    pub fn rule(&self) -> &dyn FusionRule {
        self.inner.rule.as_ref()
    }

    pub fn downcast<T: FusionRule>(&self) -> Option<&T> {
        self.inner.rule.as_any().downcast_ref::<T>()
    }

    pub fn same_ring(&self, other: &FusionRing) -> bool {
        self.inner.id == other.inner.id
    }

    pub fn ensure_same(&self, other: &FusionRing) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(FusionError::RingMismatch {
                expected: format!("{}#{}", self.name(), self.id()),
                found: format!("{}#{}", other.name(), other.id()),
            })
        }
    }

    pub fn unit(&self) -> Label {
        self.inner.rule.unit()
    }

    pub fn is_unit(&self, a: &Label) -> bool {
        *a == self.unit()
    }

    pub fn contains(&self, a: &Label) -> bool {
        self.inner.rule.contains(a)
    }

    pub fn check(&self, a: &Label) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FusionError::UnknownLabel {
                ring: self.name(),
                label: a.to_string(),
            })
        }
    }

    pub fn conjugate(&self, a: &Label) -> Result<Label> {
        self.check(a)?;
        Ok(self.inner.rule.conjugate(a))
    }

    pub fn fuse(&self, a: &Label, b: &Label) -> Result<Arc<FusionOutcome>> {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.inner.fusion_cache.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        self.check(a)?;
        self.check(b)?;
        let mut merged: HashMap<Label, u64> = HashMap::new();
        for (label, m) in self.inner.rule.fuse(a, b)? {
            if m > 0 {
                *merged.entry(label).or_insert(0) += m;
            }
        }
        let mut terms: Vec<(Label, u64)> = merged.into_iter().collect();
        terms.sort_by(|x, y| self.canonical_cmp(&x.0, &y.0));
        let outcome = Arc::new(FusionOutcome { terms });
        self.inner
            .fusion_cache
            .write()
            .unwrap()
            .insert(key, Arc::clone(&outcome));
        Ok(outcome)
    }

    /// `mult(γ, a ⊗ b)`.
    pub fn mult(&self, gamma: &Label, a: &Label, b: &Label) -> Result<u64> {
        self.check(gamma)?;
        Ok(self.fuse(a, b)?.multiplicity(gamma))
    }

    /// Multiplicity of `gamma` in the left-associated product of `word`.
    pub fn mult_word(&self, gamma: &Label, word: &[Label]) -> Result<u64> {
        self.check(gamma)?;
        let (first, rest) = word
            .split_first()
            .ok_or_else(|| FusionError::Parameter("mult_word needs a non-empty word".into()))?;
        self.check(first)?;
        let mut current: HashMap<Label, u64> = HashMap::from([(first.clone(), 1)]);
        for letter in rest {
            let mut next: HashMap<Label, u64> = HashMap::new();
            for (label, m) in &current {
                for (out, k) in self.fuse(label, letter)?.iter() {
                    *next.entry(out.clone()).or_insert(0) += m * k;
                }
            }
            current = next;
        }
        Ok(current.get(gamma).copied().unwrap_or(0))
    }

    pub fn dim(&self, a: &Label) -> Result<Dimension> {
        if let Some(d) = self.inner.dim_cache.read().unwrap().get(a) {
            return Ok(d.clone());
        }
        self.check(a)?;
        let d = self.inner.rule.dimension(a);
        self.inner
            .dim_cache
            .write()
            .unwrap()
            .insert(a.clone(), d.clone());
        Ok(d)
    }

    pub fn level(&self, a: &Label) -> Result<usize> {
        self.check(a)?;
        Ok(self.inner.rule.level(a))
    }

    /// Canonical order: by level, then lexicographically on the encoding.
    pub fn canonical_cmp(&self, a: &Label, b: &Label) -> Ordering {
        let rule = &self.inner.rule;
        rule.level(a).cmp(&rule.level(b)).then_with(|| a.cmp(b))
    }

    pub fn label_count(&self) -> Option<usize> {
        self.inner.rule.label_count()
    }

    pub fn is_finite(&self) -> bool {
        self.label_count().is_some()
    }

    /// All labels of level at most `level`, canonically ordered.
    pub fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        let mut labels = self.inner.rule.labels_up_to_level(level);
        labels.sort_by(|a, b| self.canonical_cmp(a, b));
        labels.dedup();
        labels
    }

    /// The first `n` labels in canonical order (fewer if the ring is smaller).
    pub fn first_labels(&self, n: usize) -> Vec<Label> {
        let mut level = 0;
        loop {
            let labels = self.labels_up_to_level(level);
            let exhausted = self.label_count().is_some_and(|c| labels.len() >= c);
            if labels.len() >= n || exhausted {
                return labels.into_iter().take(n).collect();
            }
            level += 1;
        }
    }

    pub fn parse_label(&self, text: &str) -> Result<Label> {
        let label = self.inner.rule.parse_label(text.trim())?;
        self.check(&label)?;
        Ok(label)
    }
}
