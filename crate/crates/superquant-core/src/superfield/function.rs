//! The supercommutative function algebra: Grassmann-valued multivariate
//! polynomials with exact rational coefficients, in canonical form.
//!
//! A term is a sorted monomial over the chart's generators together with a
//! rational coefficient. Odd generators carry exponent one; reordering two
//! odd generators flips the sign (Koszul rule) and a repeated odd generator
//! kills the term. The stored value of a monomial is the product of its
//! factors in sorted generator order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{binomial, rat_pow};

use super::chart::{ChartSpec, Gen, MultiIndex, Parity};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Canonical monomial: sorted generators with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono(pub(crate) Vec<(Gen, u32)>);

impl Mono {
    pub fn unit() -> Self {
        Mono(Vec::new())
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    fn parity(&self, chart: &ChartSpec) -> Parity {
        let odd = self
            .0
            .iter()
            .filter(|(g, _)| chart.gen_parity(g).is_odd())
            .map(|(_, e)| *e as usize)
            .sum::<usize>();
        Parity::from_count(odd)
    }

    fn degree(&self) -> usize {
        self.0.iter().map(|(_, e)| *e as usize).sum()
    }
}

/// Element of the supercommutative algebra over a chart.
#[derive(Clone, Debug)]
pub struct SuperFunction {
    chart: Arc<ChartSpec>,
    terms: BTreeMap<Mono, Rat>,
}

impl PartialEq for SuperFunction {
    fn eq(&self, other: &Self) -> bool {
        *self.chart == *other.chart && self.terms == other.terms
    }
}

impl Eq for SuperFunction {}

/// Parity classification of a function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParityClass {
    Zero,
    Homogeneous(Parity),
    Mixed,
}

/// Merges two canonical monomials, counting odd-odd crossings.
///
/// Returns `None` when an odd generator repeats.
fn merge_monos(chart: &ChartSpec, a: &Mono, b: &Mono) -> Option<(Mono, bool)> {
    let mut out: Vec<(Gen, u32)> = Vec::with_capacity(a.0.len() + b.0.len());
    let mut neg = false;
    let mut ai = a.0.iter().peekable();
    let mut bi = b.0.iter().peekable();
    // Number of odd factors of `a` not yet consumed; every odd factor of `b`
    // that is emitted while some remain crosses all of them.
    let mut odd_rest: usize = a
        .0
        .iter()
        .filter(|(g, _)| chart.gen_parity(g).is_odd())
        .count();
    loop {
        match (ai.peek(), bi.peek()) {
            (Some((ga, ea)), Some((gb, _))) if ga < gb => {
                if chart.gen_parity(ga).is_odd() {
                    odd_rest -= 1;
                }
                out.push((ga.clone(), *ea));
                ai.next();
            }
            (Some((ga, ea)), Some((gb, eb))) if ga == gb => {
                if chart.gen_parity(ga).is_odd() {
                    return None; // odd square
                }
                out.push((ga.clone(), ea + eb));
                ai.next();
                bi.next();
            }
            (_, Some((gb, eb))) => {
                if chart.gen_parity(gb).is_odd() && odd_rest % 2 == 1 {
                    neg = !neg;
                }
                out.push((gb.clone(), *eb));
                bi.next();
            }
            (Some((ga, ea)), None) => {
                out.push((ga.clone(), *ea));
                ai.next();
            }
            (None, None) => break,
        }
    }
    Some((Mono(out), neg))
}

impl SuperFunction {
    pub fn zero(chart: &Arc<ChartSpec>) -> Self {
        SuperFunction { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(chart: &Arc<ChartSpec>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(), c);
        }
        SuperFunction { chart: chart.clone(), terms }
    }

    pub fn one(chart: &Arc<ChartSpec>) -> Self {
        Self::constant(chart, Rat::one())
    }

    pub fn int(chart: &Arc<ChartSpec>, n: i64) -> Self {
        Self::constant(chart, Rat::from_integer(n.into()))
    }

    /// The coordinate function `x^i` (1-based index).
    pub fn coord(chart: &Arc<ChartSpec>, i: usize) -> Result<Self> {
        let i = chart.check_coord(i)?;
        Ok(Self::from_raw(chart, [(Mono(vec![(Gen::Coord(i), 1)]), Rat::one())]))
    }

    pub fn param(chart: &Arc<ChartSpec>, idx: u16) -> Result<Self> {
        if (idx as usize) >= chart.params().len() {
            return Err(Error::Invalid(format!("parameter index {idx} out of range")));
        }
        Ok(Self::from_raw(chart, [(Mono(vec![(Gen::Param(idx), 1)]), Rat::one())]))
    }

    /// The formal jet generator `u_alpha`.
    pub fn jet(chart: &Arc<ChartSpec>, mi: MultiIndex) -> Result<Self> {
        if chart.jet_parity().is_none() {
            return Err(Error::Invalid("chart has no jet extension".into()));
        }
        if mi.even.len() != chart.n() {
            return Err(Error::Invalid("jet multi-index length mismatch".into()));
        }
        Ok(Self::from_raw(chart, [(Mono(vec![(Gen::Jet(mi), 1)]), Rat::one())]))
    }

    pub(crate) fn from_raw<I>(chart: &Arc<ChartSpec>, items: I) -> Self
    where
        I: IntoIterator<Item = (Mono, Rat)>,
    {
        let mut out = Self::zero(chart);
        for (m, c) in items {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            // remove the key we just zeroed
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn chart(&self) -> &Arc<ChartSpec> {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn assert_chart(&self, other: &Self) {
        assert!(
            *self.chart == *other.chart,
            "superfunction operands on different charts"
        );
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if *self.chart != *other.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if *self.chart != *other.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(self * other)
    }

    /// Product that also reports whether any cross term vanished because an
    /// odd generator squared.
    pub fn mul_detect_odd_square(&self, other: &Self) -> (Self, bool) {
        self.assert_chart(other);
        let mut out = Self::zero(&self.chart);
        let mut squared = false;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                match merge_monos(&self.chart, ma, mb) {
                    Some((m, neg)) => {
                        let c = if neg { -(ca * cb) } else { ca * cb };
                        out.add_term(m, c);
                    }
                    None => squared = true,
                }
            }
        }
        (out, squared)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        SuperFunction { chart: self.chart.clone(), terms }
    }

    pub fn parity_class(&self) -> ParityClass {
        let mut found: Option<Parity> = None;
        for m in self.terms.keys() {
            let p = m.parity(&self.chart);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return ParityClass::Mixed,
                _ => {}
            }
        }
        match found {
            None => ParityClass::Zero,
            Some(p) => ParityClass::Homogeneous(p),
        }
    }

    /// True when every term has the given parity (zero passes).
    pub fn has_parity(&self, p: Parity) -> bool {
        match self.parity_class() {
            ParityClass::Zero => true,
            ParityClass::Homogeneous(q) => q == p,
            ParityClass::Mixed => false,
        }
    }

    /// Parity of a homogeneous function; errors on mixed input. Zero counts
    /// as even.
    pub fn parity(&self) -> Result<Parity> {
        match self.parity_class() {
            ParityClass::Zero => Ok(Parity::Even),
            ParityClass::Homogeneous(p) => Ok(p),
            ParityClass::Mixed => Err(Error::NonHomogeneous(format!("{self}"))),
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn constant_part(&self) -> Rat {
        self.terms.get(&Mono::unit()).cloned().unwrap_or_else(Rat::zero)
    }

    /// True when every term contains at least one odd generator.
    pub fn in_odd_ideal(&self) -> bool {
        self.terms.keys().all(|m| {
            m.0.iter().any(|(g, _)| self.chart.gen_parity(g).is_odd())
        })
    }

    pub fn is_jet_free(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().all(|(g, _)| !matches!(g, Gen::Jet(_))))
    }

    /// Left partial derivative in coordinate direction `i` (1-based).
    ///
    /// For an odd direction the derivative removes the factor with the sign
    /// `(-1)^(number of odd factors to its left)`. Jet generators are
    /// differentiated through the chain rule into raised jet generators.
    pub fn partial(&self, i: usize) -> Result<Self> {
        let i = self.chart.check_coord(i)?;
        let dir_odd = self.chart.coord_parity(i).is_odd();
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let mut left_odd = 0usize; // odd factors strictly left of the current one
            for (pos, (g, e)) in m.0.iter().enumerate() {
                let g_odd = self.chart.gen_parity(g).is_odd();
                let cross_neg = dir_odd && left_odd % 2 == 1;
                match g {
                    Gen::Coord(j) if *j == i => {
                        let mut fac = m.0.to_vec();
                        if *e == 1 {
                            fac.remove(pos);
                        } else {
                            fac[pos].1 -= 1;
                        }
                        let mut coef = c * Rat::from_integer((*e as i64).into());
                        if cross_neg {
                            coef = -coef;
                        }
                        out.add_term(Mono(fac), coef);
                    }
                    Gen::Jet(mi) => {
                        if let Some((neg, raised)) = self.chart.jet_raise(mi, i) {
                            let mut fac = m.0.to_vec();
                            fac[pos] = (Gen::Jet(raised), 1);
                            // Jet generators sort last and each term holds at
                            // most one, so the slot stays sorted.
                            let mut coef = c.clone();
                            if neg ^ cross_neg {
                                coef = -coef;
                            }
                            out.add_term(Mono(fac), coef);
                        }
                    }
                    _ => {}
                }
                if g_odd {
                    left_odd += *e as usize;
                }
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to a parameter.
    pub fn partial_param(&self, idx: u16) -> Self {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            for (pos, (g, e)) in m.0.iter().enumerate() {
                if *g == Gen::Param(idx) {
                    let mut fac = m.0.to_vec();
                    if *e == 1 {
                        fac.remove(pos);
                    } else {
                        fac[pos].1 -= 1;
                    }
                    out.add_term(Mono(fac), c * Rat::from_integer((*e as i64).into()));
                }
            }
        }
        out
    }

    /// Replaces each coordinate by its image, canonicalizing as it goes.
    ///
    /// `images[i-1]` is the image of `x^i` and must have the parity of `x^i`;
    /// parameters pass through unchanged. The input must be jet-free.
    pub fn substitute(&self, images: &[SuperFunction]) -> Result<Self> {
        if images.len() != self.chart.dim() {
            return Err(Error::Invalid("substitution image count mismatch".into()));
        }
        if !self.is_jet_free() {
            return Err(Error::Invalid("cannot substitute under jet generators".into()));
        }
        for (k, img) in images.iter().enumerate() {
            if *img.chart != *self.chart {
                return Err(Error::ChartMismatch);
            }
            let want = self.chart.coord_parity((k + 1) as u8);
            if !img.has_parity(want) {
                return Err(Error::Parity(format!(
                    "substitution image for {} must be {:?}",
                    self.chart.coord_name((k + 1) as u8),
                    want
                )));
            }
        }
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(&self.chart, c.clone());
            for (g, e) in &m.0 {
                let factor = match g {
                    Gen::Coord(i) => images[*i as usize - 1].clone(),
                    Gen::Param(p) => Self::param(&self.chart, *p)?,
                    Gen::Jet(_) => unreachable!(),
                };
                for _ in 0..*e {
                    acc = &acc * &factor;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Substitutes a value for one parameter.
    pub fn substitute_param(&self, idx: u16, value: &SuperFunction) -> Result<Self> {
        if *value.chart != *self.chart {
            return Err(Error::ChartMismatch);
        }
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(&self.chart, c.clone());
            for (g, e) in &m.0 {
                let factor = if *g == Gen::Param(idx) {
                    value.clone()
                } else {
                    Self::from_raw(&self.chart, [(Mono(vec![(g.clone(), 1)]), Rat::one())])
                };
                for _ in 0..*e {
                    acc = &acc * &factor;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Re-tags the function onto a chart that extends this one.
    pub fn promote(&self, chart: &Arc<ChartSpec>) -> Result<Self> {
        if !self.chart.extends(chart) {
            return Err(Error::ChartMismatch);
        }
        Ok(SuperFunction { chart: chart.clone(), terms: self.terms.clone() })
    }

    /// Splits a jet-linear function into its jet components: the cofactor of
    /// each jet generator, which must be jet-free.
    ///
    /// Errors when some term carries no jet generator or more than one.
    pub fn jet_decompose(&self) -> Result<BTreeMap<MultiIndex, SuperFunction>> {
        let mut out: BTreeMap<MultiIndex, SuperFunction> = BTreeMap::new();
        for (m, c) in &self.terms {
            let jets: Vec<(usize, &MultiIndex, u32)> = m
                .0
                .iter()
                .enumerate()
                .filter_map(|(p, (g, e))| match g {
                    Gen::Jet(mi) => Some((p, mi, *e)),
                    _ => None,
                })
                .collect();
            match jets.as_slice() {
                [(pos, mi, 1)] => {
                    // Jet generators sort last, so deleting the factor leaves
                    // the cofactor with no sign correction.
                    let mut fac = m.0.to_vec();
                    fac.remove(*pos);
                    let entry = out
                        .entry((*mi).clone())
                        .or_insert_with(|| Self::zero(&self.chart));
                    entry.add_term(Mono(fac), c.clone());
                }
                _ => {
                    return Err(Error::Invalid(
                        "expression is not linear in the jet generators".into(),
                    ))
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.chart);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact inverse of `c + nu` with invertible constant part and nilpotent
    /// remainder.
    pub fn invert_nilpotent(&self) -> Result<Self> {
        let c = self.constant_part();
        if c.is_zero() {
            return Err(Error::UnsupportedPower("constant part is zero".into()));
        }
        let nu = (self - &Self::constant(&self.chart, c.clone())).scale(&c.recip());
        let mut acc = Self::one(&self.chart);
        let mut p = Self::one(&self.chart);
        let cap = self.chart.m() + 2;
        for j in 1..=cap {
            p = &p * &nu;
            if p.is_zero() {
                break;
            }
            if j == cap {
                return Err(Error::UnsupportedPower(
                    "remainder is not nilpotent".into(),
                ));
            }
            let signed = if j % 2 == 1 { -p.clone() } else { p.clone() };
            acc = &acc + &signed;
        }
        Ok(acc.scale(&c.recip()))
    }

    /// Exact rational power `f^w` for `f = c (1 + nu)` with `nu` nilpotent:
    /// integer powers need only invertibility, fractional powers need an
    /// exact rational root of the constant part.
    pub fn rat_power(&self, w: &Rat) -> Result<Self> {
        if w.is_zero() {
            return Ok(Self::one(&self.chart));
        }
        if w.is_integer() {
            let e = i64::try_from(w.to_integer())
                .map_err(|_| Error::UnsupportedPower("exponent too large".into()))?;
            return if e >= 0 {
                Ok(self.pow(e as u32))
            } else {
                Ok(self.invert_nilpotent()?.pow((-e) as u32))
            };
        }
        let c = self.constant_part();
        if !c.is_positive() {
            return Err(Error::UnsupportedPower(
                "fractional power needs a positive constant part".into(),
            ));
        }
        let cw = rat_pow(&c, w)?;
        let nu = (self - &Self::constant(&self.chart, c.clone())).scale(&c.recip());
        let mut acc = Self::one(&self.chart);
        let mut p = Self::one(&self.chart);
        let cap = self.chart.m() + 2;
        for j in 1..=cap as u32 {
            p = &p * &nu;
            if p.is_zero() {
                break;
            }
            if j == cap as u32 {
                return Err(Error::UnsupportedPower("remainder is not nilpotent".into()));
            }
            acc = &acc + &p.scale(&binomial(w, j));
        }
        Ok(acc.scale(&cw))
    }
}

impl std::ops::Add for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        self.assert_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        self.assert_chart(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        SuperFunction { chart: self.chart.clone(), terms }
    }
}

impl std::ops::Mul for &SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: &SuperFunction) -> SuperFunction {
        self.mul_detect_odd_square(rhs).0
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, c: &Rat) -> fmt::Result {
    write!(f, "{c}")
}

impl fmt::Display for SuperFunction {
    /// Canonical textual form compatible with the expression grammar
    /// (jet generators use a bracket notation that is not parseable).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut first = true;
            if m.0.is_empty() || !mag.is_one() {
                write_rat(f, &mag)?;
                first = false;
            }
            for (g, e) in &m.0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                match g {
                    Gen::Coord(i) => write!(f, "{}", self.chart.coord_name(*i))?,
                    Gen::Param(p) => write!(f, "{}", self.chart.params()[*p as usize])?,
                    Gen::Jet(mi) => {
                        write!(f, "jet[")?;
                        let evens: Vec<String> =
                            mi.even.iter().map(|e| e.to_string()).collect();
                        write!(f, "{};", evens.join(","))?;
                        let odds: Vec<String> = mi.odd.iter().map(|o| o.to_string()).collect();
                        write!(f, "{}]", odds.join(","))?;
                    }
                }
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            let _ = first;
        }
        Ok(())
    }
}
