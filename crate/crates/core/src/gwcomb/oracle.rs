//! Integer re-derivation of the selection rules, independent of [`super::selection`].
//!
//! Degrees are scaled by `L = lcm(o₁, o₂, o₃)` so every comparison is exact in `i64`.

use super::selection::Rule;

/// `(level, sector, index)` of one insertion.
pub type RawInsertion = (u32, u8, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Zero,
    MinusOneOverTwentyFour,
    Unknown,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm3(o: [u32; 3]) -> i64 {
    o.iter().fold(1i64, |l, &x| l / gcd(l, x as i64) * x as i64)
}

fn scaled_degree(o: [u32; 3], l: i64, (level, sector, index): RawInsertion) -> i64 {
    let base = match sector {
        0 => (index as i64 - 1) * l,
        s => index as i64 * (l / o[s as usize - 1] as i64),
    };
    base + level as i64 * l
}

fn partner(o: [u32; 3], (sector, index): (u8, u32)) -> (u8, u32) {
    match sector {
        0 => (0, 3 - index),
        s => (s, o[s as usize - 1] - index),
    }
}

/// Searches positions `i < j`, `k < l`, all distinct, with `(i, j)` and `(k, l)` dual pairs.
fn paired(o: [u32; 3], classes: &[(u8, u32)]) -> bool {
    let n = classes.len();
    if n < 5 {
        return false;
    }
    let dual = |p: usize, q: usize| partner(o, classes[p]) == classes[q];
    for i in 0..n {
        for j in i + 1..n {
            if !dual(i, j) {
                continue;
            }
            for k in 0..n {
                for l in k + 1..n {
                    if k != i && k != j && l != i && l != j && dual(k, l) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// The decision the theorem statement predicts and the argument its proof uses.
pub fn expected(o: [u32; 3], genus: u32, d: u32, ins: &[RawInsertion]) -> (Expected, Rule) {
    let l = lcm3(o);
    let primaries = ins.iter().all(|i| i.0 == 0);
    let classes: Vec<(u8, u32)> = ins.iter().map(|i| (i.1, i.2)).collect();
    let in_scope = !ins.is_empty()
        && match genus {
            0 => primaries && paired(o, &classes),
            1 => primaries,
            2 => {
                let mut levels: Vec<u32> = ins.iter().map(|i| i.0).filter(|&n| n > 0).collect();
                levels.sort();
                levels.is_empty() || levels == [1]
            }
            _ => false,
        };
    if !in_scope {
        return (Expected::Unknown, Rule::NoRule);
    }
    if genus == 1 && d == 0 && ins == [(0, 0, 2)] {
        return (Expected::MinusOneOverTwentyFour, Rule::GenusOnePoint);
    }
    let weight: i64 = ins.iter().map(|&i| scaled_degree(o, l, i)).sum();
    let c1: i64 = o.iter().map(|&x| l / x as i64).sum::<i64>() - l;
    let vdim = (2 * genus as i64 - 2 + ins.len() as i64) * l + d as i64 * c1;
    if weight != vdim {
        (Expected::Zero, Rule::Dimension)
    } else if d == 0 && genus <= 1 {
        (Expected::Zero, Rule::Divisor)
    } else {
        (Expected::Zero, Rule::NoRule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_and_degrees() {
        assert_eq!(lcm3([4, 6, 5]), 60);
        assert_eq!(scaled_degree([2, 3, 5], 30, (0, 2, 2)), 20);
        assert_eq!(scaled_degree([2, 3, 5], 30, (1, 0, 2)), 60);
    }

    #[test]
    fn point_value() {
        assert_eq!(
            expected([1, 1, 1], 1, 0, &[(0, 0, 2)]),
            (Expected::MinusOneOverTwentyFour, Rule::GenusOnePoint)
        );
        assert_eq!(expected([1, 1, 1], 1, 0, &[(0, 0, 1)]).0, Expected::Zero);
        assert_eq!(expected([1, 1, 1], 3, 0, &[(0, 0, 1)]).0, Expected::Unknown);
    }
}
