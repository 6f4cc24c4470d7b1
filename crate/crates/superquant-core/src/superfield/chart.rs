//! Graded coordinate charts and the generator universe of the function
//! algebra.
//!
//! A chart has `n` even and `m` odd coordinates, indexed `1..=n+m` with the
//! even ones first. The algebra over a chart may be enlarged by two kinds of
//! auxiliary generators that are not coordinates:
//!
//! * *parameters* — even symbolic scalars (used for undetermined
//!   coefficients and deformation variables); they are never differentiated
//!   by coordinate directions and never summed over in traces;
//! * *jet generators* — formal symbols `u_alpha` standing for the normal-form
//!   derivatives of one undetermined density coefficient; coordinate
//!   derivatives act on them through the chain rule.

use crate::error::{Error, Result};

/// Grading in Z/2. Odd objects anticommute.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_count(k: usize) -> Parity {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Multi-index of a formal jet generator: multiplicities of the even
/// coordinate derivatives plus a strictly increasing set of odd directions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndex {
    /// One exponent per even coordinate.
    pub even: Vec<u32>,
    /// Sorted odd coordinate indices, each with multiplicity one.
    pub odd: Vec<u8>,
}

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex { even: vec![0; n], odd: Vec::new() }
    }

    /// Total order of the derivative.
    pub fn order(&self) -> u32 {
        self.even.iter().sum::<u32>() + self.odd.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 0
    }
}

/// A generator of the function algebra over a chart.
///
/// The `Ord` derive places all jet generators after coordinates and
/// parameters; term extraction relies on that.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    /// Coordinate `x^i`, 1-based.
    Coord(u8),
    /// Even symbolic parameter, index into [`ChartSpec::params`].
    Param(u16),
    /// Formal jet generator.
    Jet(MultiIndex),
}

/// A graded coordinate chart, possibly extended by parameters and jet
/// generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartSpec {
    n: usize,
    m: usize,
    names: Vec<String>,
    params: Vec<String>,
    jet_parity: Option<Parity>,
}

impl ChartSpec {
    /// Chart with default coordinate names `x1..x{n+m}`.
    pub fn new(n: usize, m: usize) -> Self {
        let names = (1..=n + m).map(|i| format!("x{i}")).collect();
        ChartSpec { n, m, names, params: Vec::new(), jet_parity: None }
    }

    /// Chart with explicit even and odd coordinate names.
    pub fn from_names(even: Vec<String>, odd: Vec<String>) -> Result<Self> {
        let n = even.len();
        let m = odd.len();
        let names: Vec<String> = even.into_iter().chain(odd).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !a.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::Invalid(format!("bad coordinate name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate coordinate name `{a}`")));
            }
        }
        Ok(ChartSpec { n, m, names, params: Vec::new(), jet_parity: None })
    }

    pub fn with_params(mut self, params: Vec<String>) -> Self {
        self.params = params;
        self
    }

    /// Enables jet generators whose base symbol has the given parity.
    pub fn with_jets(mut self, parity: Parity) -> Self {
        self.jet_parity = Some(parity);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    /// The superdimension n - m.
    pub fn superdim(&self) -> i64 {
        self.n as i64 - self.m as i64
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn jet_parity(&self) -> Option<Parity> {
        self.jet_parity
    }

    /// Parity of coordinate `i` (1-based). Panics out of range.
    pub fn coord_parity(&self, i: u8) -> Parity {
        assert!((1..=self.dim()).contains(&(i as usize)), "coordinate index {i} out of range");
        if (i as usize) <= self.n {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity on the extended index set of the lifted frame, where 0 denotes
    /// the (even) Euler direction.
    pub fn extended_parity(&self, i: u8) -> Parity {
        if i == 0 {
            Parity::Even
        } else {
            self.coord_parity(i)
        }
    }

    pub fn check_coord(&self, i: usize) -> Result<u8> {
        if (1..=self.dim()).contains(&i) {
            Ok(i as u8)
        } else {
            Err(Error::IndexOutOfRange(i))
        }
    }

    pub fn coord_name(&self, i: u8) -> &str {
        &self.names[i as usize - 1]
    }

    pub fn coord_index(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|s| s == name).map(|p| (p + 1) as u8)
    }

    pub fn param_index(&self, name: &str) -> Option<u16> {
        self.params.iter().position(|s| s == name).map(|p| p as u16)
    }

    pub fn coords(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.dim() as u8).collect::<Vec<_>>().into_iter()
    }

    /// Indices of the lifted frame: 0 (Euler) then all coordinates.
    pub fn extended_indices(&self) -> Vec<u8> {
        let mut v = vec![0u8];
        v.extend(1..=self.dim() as u8);
        v
    }

    pub fn gen_parity(&self, g: &Gen) -> Parity {
        match g {
            Gen::Coord(i) => self.coord_parity(*i),
            Gen::Param(_) => Parity::Even,
            Gen::Jet(mi) => {
                let base = self.jet_parity.expect("jet generator on a chart without jets");
                base.xor(Parity::from_count(mi.odd.len()))
            }
        }
    }

    /// Derivative of the jet generator `u_mi` in coordinate direction `i`,
    /// in normal form: `None` when it vanishes (repeated odd direction),
    /// otherwise the reordering sign and the raised multi-index.
    pub fn jet_raise(&self, mi: &MultiIndex, i: u8) -> Option<(bool, MultiIndex)> {
        let mut out = mi.clone();
        if (i as usize) <= self.n {
            out.even[i as usize - 1] += 1;
            Some((false, out))
        } else {
            if mi.odd.contains(&i) {
                return None;
            }
            // Insert the new odd direction into index order; each earlier odd
            // factor that it must pass flips the sign.
            let pos = mi.odd.iter().take_while(|&&j| j < i).count();
            out.odd.insert(pos, i);
            Some((pos % 2 == 1, out))
        }
    }

    /// True when `other` extends `self` by parameters and/or jets while
    /// keeping the same coordinates.
    pub fn extends(&self, other: &ChartSpec) -> bool {
        other.n == self.n
            && other.m == self.m
            && other.names == self.names
            && other.params.len() >= self.params.len()
            && other.params[..self.params.len()] == self.params[..]
            && (self.jet_parity.is_none() || self.jet_parity == other.jet_parity)
    }
}
