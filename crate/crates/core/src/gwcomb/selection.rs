use serde::{Deserialize, Serialize};

use super::correlator::{divisor_reduce, CorrelatorDescriptor};
use super::orbifold::{ade_predicate, virtual_dim, CRClass, OrbifoldP1, Q};
use super::GwError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Zero,
    Value(Q),
    Unknown,
}

/// The three families of correlators the vanishing theorem speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremPart {
    /// Genus 0 primaries `γ_α γ^α γ_β γ^β γ₁ ⋯ γ_k`, `k ≥ 1`.
    PairedGenusZero,
    /// Genus 1 primaries.
    GenusOne,
    /// Genus 2 primaries, optionally with one `τ₁`.
    GenusTwo,
}

/// Which argument settled the decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Dimension,
    Divisor,
    GenusOnePoint,
    NoRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    OutsideTheorem,
    Scope(TheoremPart),
    Dimension {
        weight: Q,
        virtual_dim: Q,
    },
    /// Every term of the divisor expansion carries a zero coefficient.
    Divisor {
        terms: usize,
    },
    GenusOnePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    pub part: Option<TheoremPart>,
    pub rule: Rule,
    pub trace: Vec<Step>,
}

fn all_primary(corr: &CorrelatorDescriptor) -> bool {
    corr.insertions.iter().all(|i| i.level == 0 && i.class.basis().is_some())
}

/// True if two disjoint dual pairs can be removed leaving at least one class.
fn has_two_dual_pairs(x: &OrbifoldP1, corr: &CorrelatorDescriptor) -> bool {
    if corr.insertions.len() < 5 {
        return false;
    }
    let mut counts: Vec<(CRClass, usize)> = Vec::with_capacity(corr.insertions.len());
    for c in corr.insertions.iter().filter_map(|i| i.class.basis()) {
        match counts.iter_mut().find(|(d, _)| d == c) {
            Some((_, n)) => *n += 1,
            None => counts.push((*c, 1)),
        }
    }
    let available = |c: &CRClass, need: usize| counts.iter().any(|(d, n)| d == c && *n >= need);
    for (a, _) in &counts {
        for (b, _) in &counts {
            let want = [*a, a.dual(x).0, *b, b.dual(x).0];
            if want.iter().all(|c| available(c, want.iter().filter(|w| *w == c).count())) {
                return true;
            }
        }
    }
    false
}

pub fn theorem_part(x: &OrbifoldP1, corr: &CorrelatorDescriptor) -> Option<TheoremPart> {
    if corr.insertions.is_empty() {
        return None;
    }
    match corr.genus {
        0 => (all_primary(corr) && has_two_dual_pairs(x, corr)).then_some(TheoremPart::PairedGenusZero),
        1 => all_primary(corr).then_some(TheoremPart::GenusOne),
        2 => {
            let basis = corr.insertions.iter().all(|i| i.class.basis().is_some());
            let lifted = corr.insertions.iter().filter(|i| i.level > 0).count();
            let tau1 = corr.insertions.iter().filter(|i| i.level == 1).count();
            (basis && (lifted == 0 || (lifted == 1 && tau1 == 1))).then_some(TheoremPart::GenusTwo)
        }
        _ => None,
    }
}

/// Decides a correlator of an ADE orbifold from dimension counting and the
/// divisor equation, as far as the vanishing theorem reaches.
pub fn vanishes_by_theorem(x: &OrbifoldP1, corr: &CorrelatorDescriptor) -> Result<Verdict, GwError> {
    if !ade_predicate(x) {
        return Err(GwError::NotAde(x.orders()));
    }
    corr.validate(x)?;
    let unknown = |part, trace| Verdict {
        decision: Decision::Unknown,
        part,
        rule: Rule::NoRule,
        trace,
    };
    let Some(part) = theorem_part(x, corr) else {
        return Ok(unknown(None, vec![Step::OutsideTheorem]));
    };
    let weight = corr.weight();
    let vdim = virtual_dim(x, corr.genus, corr.insertions.len() as u32, corr.degree);
    let mut trace = vec![Step::Scope(part), Step::Dimension { weight, virtual_dim: vdim }];
    if weight != vdim {
        return Ok(Verdict {
            decision: Decision::Zero,
            part: Some(part),
            rule: Rule::Dimension,
            trace,
        });
    }
    let single_omega = corr.insertions.len() == 1 && corr.insertions[0].level == 0 && corr.insertions[0].class.is_omega();
    if part == TheoremPart::GenusOne && corr.degree == 0 && single_omega {
        trace.push(Step::GenusOnePoint);
        return Ok(Verdict {
            decision: Decision::Value(Q::new(-1, 24)),
            part: Some(part),
            rule: Rule::GenusOnePoint,
            trace,
        });
    }
    if part == TheoremPart::GenusTwo {
        return Ok(unknown(Some(part), trace));
    }
    match divisor_reduce(x, corr) {
        Ok(terms) if terms.iter().all(|(c, _)| *c == Q::from_integer(0)) => {
            trace.push(Step::Divisor { terms: terms.len() });
            Ok(Verdict {
                decision: Decision::Zero,
                part: Some(part),
                rule: Rule::Divisor,
                trace,
            })
        }
        _ => Ok(unknown(Some(part), trace)),
    }
}
