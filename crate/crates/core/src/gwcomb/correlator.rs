use std::fmt;

use serde::{Deserialize, Serialize};

use super::orbifold::{CRClass, OrbifoldP1, Q};
use super::GwError;

/// A basis class, or `ω ∪ γ` kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassExpr {
    Basis(CRClass),
    OmegaCup(Box<ClassExpr>),
}

impl ClassExpr {
    pub fn degree(&self) -> Q {
        match self {
            ClassExpr::Basis(c) => c.degree(),
            ClassExpr::OmegaCup(inner) => inner.degree() + Q::from_integer(1),
        }
    }

    pub fn basis(&self) -> Option<&CRClass> {
        match self {
            ClassExpr::Basis(c) => Some(c),
            ClassExpr::OmegaCup(_) => None,
        }
    }

    pub fn is_omega(&self) -> bool {
        self.basis().is_some_and(CRClass::is_omega)
    }

    fn valid_for(&self, x: &OrbifoldP1) -> bool {
        match self {
            ClassExpr::Basis(c) => x.contains(c),
            ClassExpr::OmegaCup(inner) => inner.valid_for(x),
        }
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Basis(c) => write!(f, "{c}"),
            ClassExpr::OmegaCup(inner) => write!(f, "ω∪{inner}"),
        }
    }
}

/// `τ_n(γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Insertion {
    pub level: u32,
    pub class: ClassExpr,
}

impl Insertion {
    pub fn primary(c: CRClass) -> Self {
        Self {
            level: 0,
            class: ClassExpr::Basis(c),
        }
    }

    pub fn descendant(level: u32, c: CRClass) -> Self {
        Self {
            level,
            class: ClassExpr::Basis(c),
        }
    }

    /// Complex degree of the insertion, `n + deg γ`.
    pub fn weight(&self) -> Q {
        self.class.degree() + Q::from_integer(self.level as i64)
    }
}

/// `⟨τ_{n₁}(γ₁) ⋯ τ_{n_k}(γ_k)⟩_{g,d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorrelatorDescriptor {
    pub genus: u32,
    pub degree: u32,
    pub insertions: Vec<Insertion>,
}

impl CorrelatorDescriptor {
    pub fn new(genus: u32, degree: u32, insertions: Vec<Insertion>) -> Self {
        Self { genus, degree, insertions }
    }

    pub fn primaries(genus: u32, degree: u32, classes: &[CRClass]) -> Self {
        Self::new(genus, degree, classes.iter().copied().map(Insertion::primary).collect())
    }

    pub fn weight(&self) -> Q {
        self.insertions.iter().map(Insertion::weight).sum()
    }

    pub fn validate(&self, x: &OrbifoldP1) -> Result<(), GwError> {
        match self.insertions.iter().find(|i| !i.class.valid_for(x)) {
            Some(bad) => Err(GwError::ForeignClass(bad.class.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for CorrelatorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, ins) in self.insertions.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if ins.level == 0 {
                write!(f, "{}", ins.class)?;
            } else {
                write!(f, "τ{}({})", ins.level, ins.class)?;
            }
        }
        write!(f, ">_{{{},{}}}", self.genus, self.degree)
    }
}

/// Removes the first `τ₀(ω)` with the divisor equation.
///
/// The first term is `d` times the correlator without `ω`; then one term per
/// remaining insertion with `n_i ≥ 1`, lowered to `τ_{n_i−1}(ω ∪ γ_i)`.
pub fn divisor_reduce(x: &OrbifoldP1, corr: &CorrelatorDescriptor) -> Result<Vec<(Q, CorrelatorDescriptor)>, GwError> {
    corr.validate(x)?;
    let pos = corr
        .insertions
        .iter()
        .position(|i| i.level == 0 && i.class.is_omega())
        .ok_or(GwError::MalformedCorrelator("no τ₀(ω) insertion"))?;
    let mut rest = corr.insertions.clone();
    rest.remove(pos);
    if rest.is_empty() {
        return Err(GwError::MalformedCorrelator("τ₀(ω) is the only insertion"));
    }
    let mut out = vec![(
        Q::from_integer(corr.degree as i64),
        CorrelatorDescriptor::new(corr.genus, corr.degree, rest.clone()),
    )];
    for (k, ins) in rest.iter().enumerate() {
        if ins.level == 0 {
            continue;
        }
        let mut lowered = rest.clone();
        lowered[k] = Insertion {
            level: ins.level - 1,
            class: ClassExpr::OmegaCup(Box::new(ins.class.clone())),
        };
        out.push((Q::from_integer(1), CorrelatorDescriptor::new(corr.genus, corr.degree, lowered)));
    }
    Ok(out)
}
