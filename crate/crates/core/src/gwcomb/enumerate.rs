use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::correlator::{CorrelatorDescriptor, Insertion};
use super::oracle::{expected, Expected};
use super::orbifold::{ade_predicate, CRClass, OrbifoldP1};
use super::selection::{vanishes_by_theorem, Decision, Rule};
use super::GwError;

const MAX_RECORDED: usize = 20;
/// Longest correlator built: two dual pairs plus up to 12 extras.
const MAX_INSERTIONS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionBounds {
    /// Insertions per correlator; for the paired genus-0 family, extras beyond the two pairs.
    pub max_k: u32,
    pub max_d: u32,
    pub max_level: u32,
    pub max_genus: u32,
}

impl Default for SelectionBounds {
    fn default() -> Self {
        Self {
            max_k: 5,
            max_d: 5,
            max_level: 2,
            max_genus: 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub orders: [u32; 3],
    pub checked: u64,
    pub zero: u64,
    pub value: u64,
    pub unknown: u64,
    pub by_dimension: u64,
    pub by_divisor: u64,
    pub disagreements: u64,
    /// Up to 20 disagreeing correlators, sorted.
    pub examples: Vec<String>,
    /// Every correlator assigned a nonzero value.
    pub values: Vec<String>,
}

impl SelectionReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }

    fn merge(mut self, o: SelectionReport) -> SelectionReport {
        self.checked += o.checked;
        self.zero += o.zero;
        self.value += o.value;
        self.unknown += o.unknown;
        self.by_dimension += o.by_dimension;
        self.by_divisor += o.by_divisor;
        self.disagreements += o.disagreements;
        self.examples.extend(o.examples);
        self.examples.sort();
        self.examples.truncate(MAX_RECORDED);
        self.values.extend(o.values);
        self.values.sort();
        self
    }
}

fn check(x: &OrbifoldP1, corr: &CorrelatorDescriptor, rep: &mut SelectionReport) {
    let v = vanishes_by_theorem(x, corr).expect("orbifold checked to be ADE");
    let mut raw = [(0, 0, 0); MAX_INSERTIONS];
    for (slot, i) in raw.iter_mut().zip(&corr.insertions) {
        let c = i.class.basis().expect("enumeration only builds basis insertions");
        *slot = (i.level, c.sector(), c.index());
    }
    let (want, want_rule) = expected(x.orders(), corr.genus, corr.degree, &raw[..corr.insertions.len()]);
    rep.checked += 1;
    let agree = match (&v.decision, want) {
        (Decision::Zero, Expected::Zero) => true,
        (Decision::Value(q), Expected::MinusOneOverTwentyFour) => *q == Ratio::new(-1, 24),
        (Decision::Unknown, Expected::Unknown) => true,
        _ => false,
    } && v.rule == want_rule;
    match v.decision {
        Decision::Zero => rep.zero += 1,
        Decision::Value(_) => {
            rep.value += 1;
            rep.values.push(corr.to_string());
        }
        Decision::Unknown => rep.unknown += 1,
    }
    match v.rule {
        Rule::Dimension => rep.by_dimension += 1,
        Rule::Divisor => rep.by_divisor += 1,
        _ => {}
    }
    if !agree {
        rep.disagreements += 1;
        if rep.examples.len() < MAX_RECORDED {
            rep.examples
                .push(format!("{corr}: {:?}/{:?} vs {want:?}/{want_rule:?}", v.decision, v.rule));
        }
    }
}

/// Visits every nondecreasing index sequence of length `1..=max_len` starting at `first`.
fn multisets(n_opts: usize, first: usize, max_len: usize, f: &mut impl FnMut(&[usize])) {
    fn go(n: usize, max_len: usize, seq: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(seq);
        if seq.len() == max_len {
            return;
        }
        let start = *seq.last().unwrap();
        for k in start..n {
            seq.push(k);
            go(n, max_len, seq, f);
            seq.pop();
        }
    }
    if max_len > 0 {
        go(n_opts, max_len, &mut vec![first], f);
    }
}

/// Runs the prover against the integer oracle on every correlator in bounds.
///
/// Two families are enumerated: all multisets of up to `max_k` insertions
/// `τ_n(Δ)` with `n ≤ max_level` in genus `0..=max_genus`, and genus-0
/// primaries `Δ_a Δ_a^∨ Δ_b Δ_b^∨` followed by `1..=max_k` primary extras.
pub fn run_selection(x: &OrbifoldP1, bounds: &SelectionBounds) -> Result<SelectionReport, GwError> {
    if !ade_predicate(x) {
        return Err(GwError::NotAde(x.orders()));
    }
    let basis = x.basis();
    let opts: Vec<Insertion> = (0..=bounds.max_level)
        .flat_map(|n| basis.iter().map(move |c| Insertion::descendant(n, *c)))
        .collect();
    let max_k = bounds.max_k as usize;
    if max_k + 4 > MAX_INSERTIONS {
        return Err(GwError::BoundsTooLarge(bounds.max_k));
    }

    let mut tasks: Vec<(u32, u32, usize)> = Vec::new();
    for g in 0..=bounds.max_genus {
        for d in 0..=bounds.max_d {
            for first in 0..opts.len() {
                tasks.push((g, d, first));
            }
        }
    }
    let general = tasks
        .par_iter()
        .map(|&(g, d, first)| {
            let mut rep = SelectionReport::default();
            let mut corr = CorrelatorDescriptor::new(g, d, Vec::with_capacity(max_k));
            multisets(opts.len(), first, max_k, &mut |seq| {
                corr.insertions.clear();
                corr.insertions.extend(seq.iter().map(|&k| opts[k].clone()));
                check(x, &corr, &mut rep);
            });
            rep
        })
        .reduce(SelectionReport::default, SelectionReport::merge);

    let pairs: Vec<(CRClass, CRClass, u32)> = basis
        .iter()
        .enumerate()
        .flat_map(|(i, a)| basis[i..].iter().map(move |b| (*a, *b)))
        .flat_map(|(a, b)| (0..=bounds.max_d).map(move |d| (a, b, d)))
        .collect();
    let paired = pairs
        .par_iter()
        .map(|&(a, b, d)| {
            let mut rep = SelectionReport::default();
            let head = [a, a.dual(x).0, b, b.dual(x).0];
            let mut corr = CorrelatorDescriptor::primaries(0, d, &head);
            for first in 0..basis.len() {
                multisets(basis.len(), first, max_k, &mut |seq| {
                    corr.insertions.truncate(head.len());
                    corr.insertions.extend(seq.iter().map(|&k| Insertion::primary(basis[k])));
                    check(x, &corr, &mut rep);
                });
            }
            rep
        })
        .reduce(SelectionReport::default, SelectionReport::merge);

    let mut rep = general.merge(paired);
    rep.orders = x.orders();
    Ok(rep)
}

/// Sorted ADE triples with every order at most `max_order`.
pub fn ade_triples(max_order: u32) -> Vec<OrbifoldP1> {
    let mut out = Vec::new();
    for a in 1..=max_order {
        for b in a..=max_order {
            for c in b..=max_order {
                let x = OrbifoldP1::new([a, b, c]).unwrap();
                if ade_predicate(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}
