use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::GwError;

pub type Q = Ratio<i64>;

/// `P¹` with three orbifold points of isotropy orders `o₁, o₂, o₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbifoldP1 {
    orders: [u32; 3],
}

impl OrbifoldP1 {
    pub fn new(orders: [u32; 3]) -> Result<Self, GwError> {
        if orders.contains(&0) {
            return Err(GwError::ZeroOrder(orders));
        }
        Ok(Self { orders })
    }

    pub fn orders(&self) -> [u32; 3] {
        self.orders
    }

    pub fn order(&self, sector: u8) -> u32 {
        self.orders[sector as usize - 1]
    }

    /// `Σ 1/o_i − 1`, the degree of `c₁` on the fundamental class.
    pub fn slope(&self) -> Q {
        let [a, b, c] = self.orders.map(|o| o as i64);
        Q::new(b * c + a * c + a * b - a * b * c, a * b * c)
    }

    /// The Chen–Ruan basis: `Δ₀₁`, the twisted sectors in order, then `ω = Δ₀₂`.
    pub fn basis(&self) -> Vec<CRClass> {
        let mut out = vec![CRClass::identity()];
        for sector in 1..=3u8 {
            for index in 1..self.order(sector) {
                out.push(CRClass::twisted(self, sector, index));
            }
        }
        out.push(CRClass::omega());
        out
    }

    pub fn contains(&self, c: &CRClass) -> bool {
        match c.sector {
            0 => c.index == 1 || c.index == 2,
            s @ 1..=3 => {
                let o = self.order(s) as i64;
                c.index >= 1 && (c.index as i64) < o && *c.degree.numer() * o == c.index as i64 * *c.degree.denom()
            }
            _ => false,
        }
    }
}

impl fmt::Display for OrbifoldP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.orders;
        write!(f, "P1({a},{b},{c})")
    }
}

pub fn ade_predicate(x: &OrbifoldP1) -> bool {
    x.slope() > Q::from_integer(0)
}

/// A Chen–Ruan basis class `Δ_ij` with its complex degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CRClass {
    sector: u8,
    index: u32,
    degree: Q,
}

impl CRClass {
    pub fn new(x: &OrbifoldP1, sector: u8, index: u32) -> Result<Self, GwError> {
        let c = match sector {
            0 if index == 1 => Self::identity(),
            0 if index == 2 => Self::omega(),
            1..=3 if index >= 1 && index < x.order(sector) => Self::twisted(x, sector, index),
            _ => return Err(GwError::InvalidClass { sector, index }),
        };
        Ok(c)
    }

    fn twisted(x: &OrbifoldP1, sector: u8, index: u32) -> Self {
        Self {
            sector,
            index,
            degree: Q::new(index as i64, x.order(sector) as i64),
        }
    }

    pub fn identity() -> Self {
        Self {
            sector: 0,
            index: 1,
            degree: Q::from_integer(0),
        }
    }

    pub fn omega() -> Self {
        Self {
            sector: 0,
            index: 2,
            degree: Q::from_integer(1),
        }
    }

    pub fn sector(&self) -> u8 {
        self.sector
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn degree(&self) -> Q {
        self.degree
    }

    pub fn is_omega(&self) -> bool {
        *self == Self::omega()
    }

    /// The basis class `γ^α` is proportional to; the factor is `o_i` on twisted sectors.
    pub fn dual(&self, x: &OrbifoldP1) -> (CRClass, Q) {
        match self.sector {
            0 => (Self::new(x, 0, 3 - self.index).unwrap(), Q::from_integer(1)),
            s => {
                let o = x.order(s);
                (Self::twisted(x, s, o - self.index), Q::from_integer(o as i64))
            }
        }
    }
}

impl fmt::Display for CRClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ{}{}", self.sector, self.index)
    }
}

/// Orbifold Poincaré pairing; pairs across different sectors vanish.
pub fn poincare_pair(x: &OrbifoldP1, a: &CRClass, b: &CRClass) -> Q {
    match (a.sector, b.sector) {
        (0, 0) => Q::from_integer((a.index + b.index == 3) as i64),
        (s, t) if s == t => {
            let o = x.order(s);
            if a.index + b.index == o {
                Q::new(1, o as i64)
            } else {
                Q::from_integer(0)
            }
        }
        _ => Q::from_integer(0),
    }
}

/// Genus-0, degree-0 three-point invariants.
pub fn three_point_deg0(x: &OrbifoldP1, a: &CRClass, b: &CRClass, c: &CRClass) -> Q {
    let id = CRClass::identity();
    if *a == id {
        return poincare_pair(x, b, c);
    }
    if *b == id {
        return poincare_pair(x, a, c);
    }
    if *c == id {
        return poincare_pair(x, a, b);
    }
    if a.sector != 0 && a.sector == b.sector && b.sector == c.sector {
        let o = x.order(a.sector);
        if a.index + b.index + c.index == o {
            return Q::new(1, o as i64);
        }
    }
    Q::from_integer(0)
}

/// `2g − 2 + n + d(Σ 1/o_i − 1)`.
pub fn virtual_dim(x: &OrbifoldP1, genus: u32, n: u32, d: u32) -> Q {
    Q::from_integer(2 * genus as i64 - 2 + n as i64) + x.slope() * Q::from_integer(d as i64)
}
