use std::any::Any;
use std::fmt;
use std::sync::Arc;

use crate::error::{FusionError, Result};
use crate::fusion::ring::{Family, FusionRing, FusionRule};
use crate::fusion::Label;
use crate::scalar::Dimension;

type Predicate = Arc<dyn Fn(&Label) -> bool + Send + Sync>;

/// Full subring of a parent ring cut out by a predicate on labels. It shares the
/// parent's labels, fusion, dimensions and level filtration.
#[derive(Clone)]
pub struct Subring {
    parent: FusionRing,
    name: String,
    predicate: Predicate,
    count: Option<usize>,
}

impl fmt::Debug for Subring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subring")
            .field("name", &self.name)
            .field("parent", &self.parent)
            .finish()
    }
}

impl Subring {
    pub fn parent(&self) -> &FusionRing {
        &self.parent
    }
}

impl FusionRule for Subring {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn family(&self) -> Family {
        Family::Subring
    }

    fn unit(&self) -> Label {
        self.parent.unit()
    }

    fn contains(&self, a: &Label) -> bool {
        self.parent.contains(a) && (self.predicate)(a)
    }

    fn conjugate(&self, a: &Label) -> Label {
        self.parent.rule().conjugate(a)
    }

    fn fuse(&self, a: &Label, b: &Label) -> Result<Vec<(Label, u64)>> {
        Ok(self.parent.fuse(a, b)?.terms().to_vec())
    }

    fn dimension(&self, a: &Label) -> Dimension {
        self.parent.rule().dimension(a)
    }

    fn level(&self, a: &Label) -> usize {
        self.parent.rule().level(a)
    }

    fn labels_up_to_level(&self, level: usize) -> Vec<Label> {
        self.parent
            .labels_up_to_level(level)
            .into_iter()
            .filter(|l| (self.predicate)(l))
            .collect()
    }

    fn label_count(&self) -> Option<usize> {
        self.count
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        self.parent.parse_label(text)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Checks that `predicate` selects a full subring of `parent` on labels up to
/// `level`: contains the unit, closed under conjugation and under taking all
/// summands of tensor products.
pub fn validate_full_subring<F>(parent: &FusionRing, predicate: F, level: usize) -> Result<()>
where
    F: Fn(&Label) -> bool,
{
    if !predicate(&parent.unit()) {
        return Err(FusionError::validation("subring must contain the unit", parent.unit().to_string()));
    }
    let labels: Vec<Label> = parent
        .labels_up_to_level(level)
        .into_iter()
        .filter(|l| predicate(l))
        .collect();
    for a in &labels {
        let abar = parent.conjugate(a)?;
        if !predicate(&abar) {
            return Err(FusionError::validation(
                "subring not closed under conjugation",
                format!("{a} ↦ {abar}"),
            ));
        }
        for b in &labels {
            for (gamma, _) in parent.fuse(a, b)?.iter() {
                if !predicate(gamma) {
                    return Err(FusionError::validation(
                        "subring not closed under fusion",
                        format!("{gamma} ⊂ {a} ⊗ {b}"),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Level up to which subring closure is checked at construction.
pub const SUBRING_VALIDATION_LEVEL: usize = 4;

/// Builds the full subring of `parent` selected by `predicate`, validated up to
/// [`SUBRING_VALIDATION_LEVEL`].
pub fn build_full_subring<F>(parent: &FusionRing, name: impl Into<String>, predicate: F) -> Result<FusionRing>
where
    F: Fn(&Label) -> bool + Send + Sync + 'static,
{
    validate_full_subring(parent, &predicate, SUBRING_VALIDATION_LEVEL)?;
    let count = parent.label_count().map(|_| {
        parent
            .labels_up_to_level(usize::MAX / 2)
            .iter()
            .filter(|l| predicate(l))
            .count()
    });
    Ok(FusionRing::new(Subring {
        parent: parent.clone(),
        name: name.into(),
        predicate: Arc::new(predicate),
        count,
    }))
}
