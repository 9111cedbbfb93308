use std::fmt;
use std::sync::Arc;

use crate::builders::subring::build_full_subring;
use crate::builders::sun::SpecialUnitary;
use crate::error::{FusionError, Result};
use crate::fusion::ring::FusionRing;
use crate::fusion::Label;

/// Level up to which a grading is checked against the fusion rules.
pub const GRADING_VALIDATION_LEVEL: usize = 4;

type DegreeFn = Arc<dyn Fn(&Label) -> u32 + Send + Sync>;

/// Grading `Ξ : Irr → Z/nZ` compatible with fusion:
/// `Ξ(ε) = 0`, `Ξ(ā) = -Ξ(a)` and `Ξ(γ) = Ξ(a) + Ξ(b)` whenever `γ ⊂ a ⊗ b`.
#[derive(Clone)]
pub struct GradingMap {
    ring: FusionRing,
    modulus: u32,
    degree: DegreeFn,
}

impl fmt::Debug for GradingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradingMap")
            .field("ring", &self.ring.name())
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl GradingMap {
    /// Wraps `degree` (values reduced mod `modulus`) after validating it on all
    /// labels up to [`GRADING_VALIDATION_LEVEL`].
    pub fn new<F>(ring: &FusionRing, modulus: u32, degree: F) -> Result<Self>
    where
        F: Fn(&Label) -> u32 + Send + Sync + 'static,
    {
        if modulus == 0 {
            return Err(FusionError::Parameter("grading modulus must be positive".into()));
        }
        let map = GradingMap {
            ring: ring.clone(),
            modulus,
            degree: Arc::new(move |l| degree(l) % modulus),
        };
        map.validate(GRADING_VALIDATION_LEVEL)?;
        Ok(map)
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn degree(&self, a: &Label) -> Result<u32> {
        self.ring.check(a)?;
        Ok((self.degree)(a))
    }

    /// Checks the grading axioms on every pair of labels up to `level`.
    pub fn validate(&self, level: usize) -> Result<()> {
        let n = self.modulus;
        let unit = self.ring.unit();
        if (self.degree)(&unit) != 0 {
            return Err(FusionError::validation("Ξ(ε) must be 0", unit.to_string()));
        }
        let labels = self.ring.labels_up_to_level(level);
        for a in &labels {
            let da = (self.degree)(a);
            let abar = self.ring.conjugate(a)?;
            if ((self.degree)(&abar) + da) % n != 0 {
                return Err(FusionError::validation("Ξ(ā) must equal -Ξ(a)", a.to_string()));
            }
            for b in &labels {
                let target = (da + (self.degree)(b)) % n;
                for (gamma, _) in self.ring.fuse(a, b)?.iter() {
                    if (self.degree)(gamma) != target {
                        return Err(FusionError::validation(
                            "grading incompatible with fusion",
                            format!("a={a}, b={b}, γ={gamma}"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Ξ(λ) = |λ| mod n` on the `SU_q(n)` fusion ring.
pub fn grading_of_sun(ring: &FusionRing) -> Result<GradingMap> {
    let n = ring
        .downcast::<SpecialUnitary>()
        .map(|r| r.rank())
        .ok_or_else(|| FusionError::Parameter(format!("{} is not an SU(n) ring", ring.name())))?;
    GradingMap::new(ring, n, |l| match l {
        Label::Partition(p) => p.iter().sum(),
        _ => 0,
    })
}

/// `Ξ(k) = k mod modulus` on `Z` or `Z/m` (`modulus` must divide `m`).
pub fn integer_grading(ring: &FusionRing, modulus: u32) -> Result<GradingMap> {
    if !matches!(ring.unit(), Label::Int(_)) {
        return Err(FusionError::Parameter(format!("{} is not Z or Z/m", ring.name())));
    }
    let m = modulus as i64;
    GradingMap::new(ring, modulus, move |l| match l {
        Label::Int(k) => k.rem_euclid(m) as u32,
        _ => 0,
    })
}

/// The full subring `{a : Ξ(a) = 0}`; for `SU_q(n)` this is the `PSU_q(n)` ring.
pub fn grading_kernel(ring: &FusionRing, grading: &GradingMap) -> Result<FusionRing> {
    ring.ensure_same(grading.ring())?;
    let degree = Arc::clone(&grading.degree);
    build_full_subring(ring, format!("ker Ξ ⊂ {}", ring.name()), move |l| degree(l) == 0)
}
