//! Multivariate polynomials in arrow-entry variables and formal parameters.
//!
//! Monomials are kept in a canonical sorted form; the variable order is
//! lexicographic on (arrow id, row, col), with parameters after all arrow
//! entries. [`RationalExpr`] tracks a single designated denominator raised to
//! a power — the only denominators the lift pipeline ever produces are powers
//! of one determinant, and restricting to that shape keeps errors loud.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A variable of the ambient coordinate ring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Variable {
    /// Entry (row, col) of the matrix over the arrow with the given index.
    Entry { arrow: u32, row: u16, col: u16 },
    /// Auxiliary formal parameter (transvection parameter, parametrizations).
    Param(u32),
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Entry { arrow, row, col } => write!(f, "T{arrow}[{row},{col}]"),
            Variable::Param(k) => write!(f, "t{k}"),
        }
    }
}

/// Canonical monomial: sorted variable/exponent pairs, exponents nonzero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: &[(Variable, u32)]) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn exponents(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Variable, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_where(&self, mut pred: impl FnMut(Variable) -> bool) -> u32 {
        self.0.iter().filter(|&&(v, _)| pred(v)).map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, v: Variable) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Remove `v^k` from the monomial; `None` if the exponent is below `k`.
    fn without(&self, v: Variable, k: u32) -> Option<Monomial> {
        let cur = self.exponent_of(v);
        if cur < k {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .filter_map(|&(w, e)| {
                    if w == v {
                        if e == k {
                            None
                        } else {
                            Some((w, e - k))
                        }
                    } else {
                        Some((w, e))
                    }
                })
                .collect(),
        ))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Exact multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Variable, field: Field) -> Self {
        let mut p = Poly::zero(field);
        p.terms.insert(Monomial::var(v), Scalar::one(field));
        p
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Max degree over monomials in the variables selected by `pred`.
    pub fn degree_where(&self, mut pred: impl FnMut(Variable) -> bool) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_where(&mut pred))
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for &(v, _) in m.exponents() {
                set.insert(v);
            }
        }
        set.into_iter().collect()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = Poly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Scalar::one(self.field));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation; every variable of `self` must be assigned.
    pub fn eval(&self, point: &BTreeMap<Variable, Scalar>) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.exponents() {
                let val = point.get(&v).ok_or(Error::MissingAssignment)?;
                term = &term * &val.pow(e as i64).expect("nonneg power");
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Formal substitution by polynomials; unmapped variables stay themselves.
    pub fn substitute(&self, map: &BTreeMap<Variable, Poly>) -> Poly {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.exponents() {
                let img = match map.get(&v) {
                    Some(p) => p.pow(e),
                    None => Poly::monomial(Monomial::from_pairs(&[(v, e)]), Scalar::one(self.field)),
                };
                term = term.mul(&img);
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitution where images may carry the single tracked denominator.
    pub fn substitute_rational(&self, map: &BTreeMap<Variable, RationalExpr>) -> Result<RationalExpr> {
        let mut out = RationalExpr::from_poly(Poly::zero(self.field));
        for (m, c) in &self.terms {
            let mut term = RationalExpr::from_poly(Poly::constant(c.clone()));
            for &(v, e) in m.exponents() {
                let img = match map.get(&v) {
                    Some(r) => r.pow(e)?,
                    None => RationalExpr::from_poly(Poly::monomial(
                        Monomial::from_pairs(&[(v, e)]),
                        Scalar::one(self.field),
                    )),
                };
                term = term.mul(&img)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Exact coefficient of `t^k`, a polynomial in the remaining variables.
    pub fn coeff_in_parameter(&self, t: Variable, k: u32) -> Poly {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            if m.exponent_of(t) == k {
                let rest = m.without(t, k).expect("exponent checked");
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn max_param_degree(&self, t: Variable) -> u32 {
        self.terms.keys().map(|m| m.exponent_of(t)).max().unwrap_or(0)
    }

    /// Component whose group multidegrees match `degrees` exactly.
    pub fn multidegree_component(&self, groups: &[Vec<Variable>], degrees: &[u32]) -> Poly {
        assert_eq!(groups.len(), degrees.len());
        let mut out = Poly::zero(self.field);
        'term: for (m, c) in &self.terms {
            for (g, &d) in groups.iter().zip(degrees) {
                if m.degree_where(|v| g.contains(&v)) != d {
                    continue 'term;
                }
            }
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.exponents().is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multidegree filter over a list of polynomials: keeps the (nonzero)
/// component of each element in the requested graded piece.
pub fn graded_piece(space: &[Poly], groups: &[Vec<Variable>], degrees: &[u32]) -> Vec<Poly> {
    space
        .iter()
        .map(|f| f.multidegree_component(groups, degrees))
        .filter(|f| !f.is_zero())
        .collect()
}

/// All monomials (as polynomials) using only the group variables, with the
/// prescribed total degree per group.
pub fn monomials_of_multidegree(groups: &[Vec<Variable>], degrees: &[u32], field: Field) -> Vec<Poly> {
    fn gen_group(vars: &[Variable], deg: u32) -> Vec<Monomial> {
        if vars.is_empty() {
            return if deg == 0 { vec![Monomial::one()] } else { vec![] };
        }
        let mut out = Vec::new();
        let (first, rest) = (vars[0], &vars[1..]);
        for e in 0..=deg {
            for tail in gen_group(rest, deg - e) {
                out.push(Monomial::from_pairs(&[(first, e)]).mul(&tail));
            }
        }
        out
    }
    let mut acc = vec![Monomial::one()];
    for (g, &d) in groups.iter().zip(degrees) {
        let part = gen_group(g, d);
        let mut next = Vec::with_capacity(acc.len() * part.len());
        for a in &acc {
            for b in &part {
                next.push(a.mul(b));
            }
        }
        acc = next;
    }
    acc.sort();
    acc.into_iter()
        .map(|m| Poly::monomial(m, Scalar::one(field)))
        .collect()
}

/// Numerator over a tracked denominator power: `num / base^pow`.
/// `den` is `None` for a genuine polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalExpr {
    pub num: Poly,
    den: Option<(Poly, u32)>,
}

impl RationalExpr {
    pub fn from_poly(p: Poly) -> Self {
        RationalExpr { num: p, den: None }
    }

    pub fn over_denominator(num: Poly, base: Poly, pow: u32) -> Self {
        if pow == 0 {
            RationalExpr::from_poly(num)
        } else {
            RationalExpr {
                num,
                den: Some((base, pow)),
            }
        }
    }

    pub fn denominator(&self) -> Option<(&Poly, u32)> {
        self.den.as_ref().map(|(b, p)| (b, *p))
    }

    pub fn den_pow(&self) -> u32 {
        self.den.as_ref().map(|&(_, p)| p).unwrap_or(0)
    }

    fn common_base<'a>(&'a self, other: &'a RationalExpr) -> Result<Option<&'a Poly>> {
        match (&self.den, &other.den) {
            (None, None) => Ok(None),
            (Some((b, _)), None) => Ok(Some(b)),
            (None, Some((b, _))) => Ok(Some(b)),
            (Some((a, _)), Some((b, _))) => {
                if a == b {
                    Ok(Some(a))
                } else {
                    Err(Error::MixedDenominators)
                }
            }
        }
    }

    pub fn add(&self, other: &RationalExpr) -> Result<RationalExpr> {
        let base = self.common_base(other)?.cloned();
        let (p, q) = (self.den_pow(), other.den_pow());
        let target = p.max(q);
        let num = match &base {
            None => self.num.add(&other.num),
            Some(b) => {
                let lhs = self.num.mul(&b.pow(target - p));
                let rhs = other.num.mul(&b.pow(target - q));
                lhs.add(&rhs)
            }
        };
        Ok(match base {
            Some(b) if target > 0 => RationalExpr::over_denominator(num, b, target),
            _ => RationalExpr::from_poly(num),
        })
    }

    pub fn mul(&self, other: &RationalExpr) -> Result<RationalExpr> {
        let base = self.common_base(other)?.cloned();
        let pow = self.den_pow() + other.den_pow();
        let num = self.num.mul(&other.num);
        Ok(match base {
            Some(b) if pow > 0 => RationalExpr::over_denominator(num, b, pow),
            _ => RationalExpr::from_poly(num),
        })
    }

    pub fn pow(&self, e: u32) -> Result<RationalExpr> {
        let mut acc = RationalExpr::from_poly(Poly::constant(Scalar::one(self.num.field())));
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply by `base^n` and return a genuine polynomial:
    /// `clear(num/base^p, n) = num * base^(n-p)`; fails when `n < p`.
    pub fn clear(&self, n: u32) -> Result<Poly> {
        match &self.den {
            None => {
                if n == 0 {
                    Ok(self.num.clone())
                } else {
                    panic!("no tracked denominator; use clear_with");
                }
            }
            Some((b, p)) => {
                if n < *p {
                    Err(Error::ClearingPower { given: n, needed: *p })
                } else {
                    Ok(self.num.mul(&b.pow(n - p)))
                }
            }
        }
    }

    /// Clear against an explicitly supplied base (needed when the expression
    /// happens to be denominator-free).
    pub fn clear_with(&self, base: &Poly, n: u32) -> Result<Poly> {
        match &self.den {
            None => Ok(self.num.mul(&base.pow(n))),
            Some((b, p)) => {
                if b != base {
                    return Err(Error::MixedDenominators);
                }
                if n < *p {
                    Err(Error::ClearingPower { given: n, needed: *p })
                } else {
                    Ok(self.num.mul(&base.pow(n - p)))
                }
            }
        }
    }

    pub fn eval(&self, point: &BTreeMap<Variable, Scalar>) -> Result<Option<Scalar>> {
        let num = self.num.eval(point)?;
        match &self.den {
            None => Ok(Some(num)),
            Some((b, p)) => {
                let bv = b.eval(point)?;
                match bv.pow(*p as i64 * -1) {
                    Some(inv) => Ok(Some(&num * &inv)),
                    None => Ok(None), // denominator vanishes at the point
                }
            }
        }
    }
}

#[cfg(test)]
pub(crate) fn random_poly(
    rng: &mut rand_chacha::ChaCha8Rng,
    vars: &[Variable],
    max_terms: usize,
    max_exp: u32,
    field: Field,
) -> Poly {
    use rand::Rng;
    let mut p = Poly::zero(field);
    let nterms = rng.gen_range(1..=max_terms);
    for _ in 0..nterms {
        let pairs: Vec<(Variable, u32)> = vars
            .iter()
            .map(|&v| (v, rng.gen_range(0..=max_exp)))
            .collect();
        let c = Scalar::from_int(rng.gen_range(-4i64..=4), field);
        p = p.add(&Poly::monomial(Monomial::from_pairs(&pairs), c));
    }
    p
}
