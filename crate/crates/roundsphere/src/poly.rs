//! Sparse multivariate polynomials over an exact or floating coefficient.
//!
//! Terms are kept sorted by packed monomial, which makes equality structural
//! and merges linear. Products accumulate into a dense rank-indexed buffer;
//! for rational coefficients the kernel first factors out common denominators
//! and runs on `i128` integers, falling back to generic arithmetic whenever
//! anything would overflow.

use crate::mono::{Mono, RankTable};
use crate::num::Rat;
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

/// Coefficient scalar: exact rationals for the identity lane, `f64` for the
/// numeric lane. Both share every polynomial algorithm.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Default + 'static {
    const EXACT: bool;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn div_int(&self, k: i64) -> Self;
    fn from_int(k: i64) -> Self;
    fn from_ratio(p: i64, q: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Hook so a coefficient type can supply a faster multiplication kernel.
    fn mul_polys(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        mul_generic(a, b)
    }
}

impl Coeff for Rat {
    const EXACT: bool = true;
    fn zero() -> Self {
        Rat::ZERO
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: i64) -> Self {
        Rat::mul_int(self, k)
    }
    fn div_int(&self, k: i64) -> Self {
        Rat::div_int(self, k)
    }
    fn from_int(k: i64) -> Self {
        Rat::from_int(k)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Rat::ratio(p, q)
    }
    fn to_f64(&self) -> f64 {
        Rat::to_f64(self)
    }
    fn mul_polys(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        mul_rat_int(a, b).unwrap_or_else(|| mul_generic(a, b))
    }
}

impl Coeff for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: i64) -> Self {
        self * k as f64
    }
    fn div_int(&self, k: i64) -> Self {
        self / k as f64
    }
    fn from_int(k: i64) -> Self {
        k as f64
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

thread_local! {
    static RANK_TABLES: RefCell<HashMap<(usize, usize), Rc<RankTable>>> =
        RefCell::new(HashMap::new());
}

pub fn rank_table(nvars: usize, max_deg: usize) -> Rc<RankTable> {
    RANK_TABLES.with(|c| {
        c.borrow_mut()
            .entry((nvars, max_deg))
            .or_insert_with(|| Rc::new(RankTable::new(nvars, max_deg)))
            .clone()
    })
}

/// Polynomial in `nvars` ambient variables. Terms sorted by monomial, no
/// stored zeros; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Coeff> {
    nvars: usize,
    terms: Vec<(Mono, C)>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Mono::ONE, c));
        }
        Poly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, C::from_int(1))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Poly {
            nvars,
            terms: vec![(Mono::var(i), C::from_int(1))],
        }
    }

    pub fn monomial(nvars: usize, m: Mono, c: C) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((m, c));
        }
        Poly { nvars, terms }
    }

    /// Build from unsorted terms, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Mono, C)>) -> Self {
        terms.sort_unstable_by_key(|(m, _)| *m);
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => lc.add_assign_ref(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn coeff(&self, m: Mono) -> C {
        match self.terms.binary_search_by_key(&m, |(t, _)| *t) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(m, _)| m.total_deg(self.nvars) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.total_deg(self.nvars) as usize == d)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*mb, if negate { cb.neg_ref() } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { ca.sub_ref(cb) } else {
                        let mut c = ca.clone();
                        c.add_assign_ref(cb);
                        c
                    };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { c.neg_ref() } else { c.clone() })),
        );
        Poly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, t)| (*m, t.mul_ref(c)))
                .collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 0 {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul_int(k))).collect(),
        }
    }

    pub fn div_int(&self, k: i64) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.div_int(k))).collect(),
        }
    }

    pub fn scale_ratio(&self, p: i64, q: i64) -> Self {
        self.scale_int(p).div_int(q)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "dimension mismatch");
        C::mul_polys(self, other)
    }

    /// Multiply by a single monomial with coefficient 1.
    pub fn mul_mono(&self, m: Mono) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| (m.div_var(i), c.mul_int(m.exp(i) as i64)))
            .collect();
        Poly::from_terms(self.nvars, terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Flat Laplacian in the ambient variables.
    pub fn laplacian(&self) -> Self {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                let e = m.exp(i);
                if e >= 2 {
                    terms.push((m.div_var(i).div_var(i), c.mul_int((e * (e - 1)) as i64)));
                }
            }
        }
        Poly::from_terms(self.nvars, terms)
    }

    /// Coefficients of the split by total degree.
    pub fn homogeneous_parts(&self) -> Vec<(usize, Poly<C>)> {
        let mut parts: Vec<(usize, Vec<(Mono, C)>)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.total_deg(self.nvars) as usize;
            match parts.iter_mut().find(|(pd, _)| *pd == d) {
                Some((_, v)) => v.push((*m, c.clone())),
                None => parts.push((d, vec![(*m, c.clone())])),
            }
        }
        parts.sort_by_key(|(d, _)| *d);
        parts
            .into_iter()
            .map(|(d, terms)| {
                (
                    d,
                    Poly {
                        nvars: self.nvars,
                        terms: {
                            let mut t = terms;
                            t.sort_unstable_by_key(|(m, _)| *m);
                            t
                        },
                    },
                )
            })
            .collect()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &xi) in x.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= xi.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        }
    }
}

/// `|x|^2` in `nvars` variables.
pub fn radius_sq<C: Coeff>(nvars: usize) -> Poly<C> {
    let terms = (0..nvars)
        .map(|i| (Mono::var(i).mul(Mono::var(i)), C::from_int(1)))
        .collect();
    Poly::from_terms(nvars, terms)
}

fn mul_generic<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.nvars);
    }
    let (small, large) = if a.terms.len() <= b.terms.len() {
        (a, b)
    } else {
        (b, a)
    };
    // Tiny products: collect and merge, skipping the dense buffer.
    if small.terms.len() * large.terms.len() <= 1024 {
        let mut terms = Vec::with_capacity(small.terms.len() * large.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                terms.push((ma.mul(*mb), ca.mul_ref(cb)));
            }
        }
        return Poly::from_terms(a.nvars, terms);
    }
    let deg = a.degree() + b.degree();
    let table = rank_table(a.nvars, deg);
    let mut vals: Vec<C> = vec![C::zero(); table.size()];
    let mut touched: Vec<bool> = vec![false; table.size()];
    let mut dirty: Vec<(u32, Mono)> = Vec::new();
    for (ma, ca) in &small.terms {
        for (mb, cb) in &large.terms {
            let m = ma.mul(*mb);
            let r = table.rank(m);
            vals[r].add_assign_ref(&ca.mul_ref(cb));
            if !touched[r] {
                touched[r] = true;
                dirty.push((r as u32, m));
            }
        }
    }
    dirty.sort_unstable_by_key(|&(_, m)| m);
    let mut terms = Vec::with_capacity(dirty.len());
    for (r, m) in dirty {
        let c = std::mem::take(&mut vals[r as usize]);
        if !c.is_zero() {
            terms.push((m, c));
        }
    }
    Poly {
        nvars: a.nvars,
        terms,
    }
}

/// Fast path for rational polynomials: scale both factors to integer
/// coefficients over a common denominator and multiply in `i128`. Returns
/// `None` when anything falls outside machine range.
fn mul_rat_int(a: &Poly<Rat>, b: &Poly<Rat>) -> Option<Poly<Rat>> {
    if a.is_zero() || b.is_zero() {
        return Some(Poly::zero(a.nvars));
    }
    if a.terms.len() * b.terms.len() <= 1024 {
        return None; // generic small path is fine
    }
    let va = int_view(a)?;
    let vb = int_view(b)?;
    let den = va.1.checked_mul(vb.1)?;
    let (small, large) = if va.0.len() <= vb.0.len() {
        (&va.0, &vb.0)
    } else {
        (&vb.0, &va.0)
    };
    let deg = a.degree() + b.degree();
    let table = rank_table(a.nvars, deg);
    let mut vals: Vec<i128> = vec![0; table.size()];
    let mut touched: Vec<bool> = vec![false; table.size()];
    let mut dirty: Vec<(u32, Mono)> = Vec::new();
    for &(ma, ca) in small {
        for &(mb, cb) in large {
            let m = ma.mul(mb);
            let r = table.rank(m);
            let prod = ca.checked_mul(cb)?;
            vals[r] = vals[r].checked_add(prod)?;
            if !touched[r] {
                touched[r] = true;
                dirty.push((r as u32, m));
            }
        }
    }
    dirty.sort_unstable_by_key(|&(_, m)| m);
    let mut terms = Vec::with_capacity(dirty.len());
    for (r, m) in dirty {
        let v = vals[r as usize];
        if v != 0 {
            terms.push((m, rat_from_i128(v, den)));
        }
    }
    Some(Poly {
        nvars: a.nvars,
        terms,
    })
}

fn rat_from_i128(p: i128, q: i128) -> Rat {
    use num_integer::Integer;
    let g = p.unsigned_abs().gcd(&q.unsigned_abs()) as i128;
    debug_assert!(q > 0);
    Rat::Small(p / g, q / g)
}

/// (integer terms, common denominator); `None` if any coefficient is big or
/// the common denominator overflows.
fn int_view(p: &Poly<Rat>) -> Option<(Vec<(Mono, i128)>, i128)> {
    let mut den: i128 = 1;
    for (_, c) in &p.terms {
        match c {
            Rat::Small(_, q) => {
                let g = num_integer::Integer::gcd(&den.unsigned_abs(), &q.unsigned_abs()) as i128;
                den = den.checked_mul(q / g)?;
            }
            Rat::Big(_) => return None,
        }
    }
    let mut out = Vec::with_capacity(p.terms.len());
    for (m, c) in &p.terms {
        match c {
            Rat::Small(num, q) => {
                let scaled = num.checked_mul(den / q)?;
                out.push((*m, scaled));
            }
            Rat::Big(_) => return None,
        }
    }
    Some((out, den))
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if mag != Rat::ONE || m.total_deg(self.nvars) == 0 {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for i in 0..self.nvars {
                let e = m.exp(i);
                if e > 0 {
                    if wrote {
                        write!(f, " * ")?;
                    }
                    wrote = true;
                    if e == 1 {
                        write!(f, "x{i}")?;
                    } else {
                        write!(f, "x{i}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Poly<Rat> {
    /// Parse the textual form produced by `Display`, e.g.
    /// `"3/2 * x0^2 * x1 - x3 + 1"`. Whitespace between factors also works.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly<Rat>, String> {
        let mut terms: Vec<(Mono, Rat)> = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            // term ends at the next top-level '+' or '-'
            let end = rest
                .char_indices()
                .find(|&(i, ch)| (ch == '+' || ch == '-') && i > 0 && !rest[..i].ends_with('^'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = rest[..end].trim();
            if term.is_empty() {
                return Err(format!("empty term in `{s}`"));
            }
            let (m, c) = parse_term(term, nvars)?;
            terms.push((m, c.mul_int(sign)));
            if end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
            rest = rest[end + 1..].trim_start();
        }
        Ok(Poly::from_terms(nvars, terms))
    }
}

fn parse_term(term: &str, nvars: usize) -> Result<(Mono, Rat), String> {
    let mut coeff = Rat::ONE;
    let mut mono = Mono::ONE;
    for factor in term.split(|c: char| c == '*' || c.is_whitespace()) {
        let factor = factor.trim();
        if factor.is_empty() {
            continue;
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (
                    i.parse::<usize>().map_err(|_| format!("bad variable `{factor}`"))?,
                    e.parse::<u32>().map_err(|_| format!("bad exponent `{factor}`"))?,
                ),
                None => (
                    rest.parse::<usize>().map_err(|_| format!("bad variable `{factor}`"))?,
                    1,
                ),
            };
            if idx >= nvars {
                return Err(format!("variable x{idx} out of range (nvars = {nvars})"));
            }
            for _ in 0..exp {
                mono = mono.mul(Mono::var(idx));
            }
        } else {
            let c: Rat = factor.parse()?;
            coeff = &coeff * &c;
        }
    }
    Ok((mono, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, nvars: usize) -> Poly<Rat> {
        Poly::parse(s, nvars).unwrap()
    }

    #[test]
    fn add_and_cancel() {
        let a = p("x0", 3);
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.add(&a), p("2 * x0", 3));
        assert_eq!(
            p("x0 * x1 + 1", 3).add(&p("x0 * x1", 3)),
            p("2 * x0 x1 + 1", 3)
        );
    }

    #[test]
    fn products() {
        let lhs = p("x0 + x1", 3).mul(&p("x0 - x1", 3));
        assert_eq!(lhs, p("x0^2 - x1^2", 3));
        let one = Poly::<Rat>::one(3);
        let q = p("5/3 * x0^2 x2 - x1 + 2", 3);
        assert_eq!(q.mul(&one), q);
        // |x|^2 * |x|^2 = |x|^4 in 3 vars (n = 2), expanded by hand
        let r2 = radius_sq::<Rat>(3);
        let r4 = r2.mul(&r2);
        let expected = p(
            "x0^4 + x1^4 + x2^4 + 2 x0^2 x1^2 + 2 x0^2 x2^2 + 2 x1^2 x2^2",
            3,
        );
        assert_eq!(r4, expected);
    }

    #[test]
    fn dense_kernel_matches_generic() {
        // Force both paths on the same data and compare.
        let mut terms_a = Vec::new();
        let mut terms_b = Vec::new();
        let mut k = 1i64;
        for e0 in 0..4u32 {
            for e1 in 0..4u32 {
                for e2 in 0..3u32 {
                    let m = Mono::from_exps(&[e0, e1, e2]);
                    terms_a.push((m, Rat::ratio(k, 3)));
                    terms_b.push((m, Rat::ratio(2 * k + 1, 5)));
                    k += 1;
                }
            }
        }
        let a = Poly::from_terms(3, terms_a);
        let b = Poly::from_terms(3, terms_b);
        let fast = Coeff::mul_polys(&a, &b);
        let slow = mul_generic(&a, &b);
        assert_eq!(fast, slow);
        assert_eq!(mul_rat_int(&a, &b).unwrap(), slow);
    }

    #[test]
    fn laplacian_and_gradient() {
        let n = 4; // 5 ambient vars
        let r2 = radius_sq::<Rat>(n + 1);
        assert_eq!(
            r2.laplacian(),
            Poly::constant(n + 1, Rat::from_int(2 * (n as i64 + 1)))
        );
        assert!(p("x0 * x1", n + 1).laplacian().is_zero());
        assert_eq!(p("x0^4", n + 1).laplacian(), p("12 * x0^2", n + 1));
        let g = r2.gradient();
        for (i, gi) in g.iter().enumerate() {
            assert_eq!(*gi, Poly::var(n + 1, i).scale_int(2));
        }
        assert_eq!(p("x0^2 x1", 3).gradient()[0], p("2 x0 x1", 3));
        assert_eq!(p("x0^2 x1", 3).gradient()[1], p("x0^2", 3));
        assert!(p("x0^2 x1", 3).gradient()[2].is_zero());
    }

    #[test]
    fn display_parse_round_trip() {
        let q = p("-3/2 * x0^2 * x1 + x4 - 7", 5);
        let s = q.to_string();
        assert_eq!(Poly::parse(&s, 5).unwrap(), q);
    }

    #[test]
    fn euler_identity_homogeneous() {
        // sum_i x_i d_i p = d * p for homogeneous p
        let q = p("x0^2 x1 - 4 x1^3 + 1/2 x0 x1 x2", 3);
        let mut acc = Poly::zero(3);
        for i in 0..3 {
            acc = acc.add(&q.derivative(i).mul(&Poly::var(3, i)));
        }
        assert_eq!(acc, q.scale_int(3));
    }

    #[test]
    fn leibniz_for_laplacian() {
        let a = p("x0^2 - x1 x2", 3);
        let b = p("x1^2 + 2 x0 x2", 3);
        let lhs = a.mul(&b).laplacian();
        let mut cross = Poly::zero(3);
        for i in 0..3 {
            cross = cross.add(&a.derivative(i).mul(&b.derivative(i)));
        }
        let rhs = a
            .laplacian()
            .mul(&b)
            .add(&b.laplacian().mul(&a))
            .add(&cross.scale_int(2));
        assert_eq!(lhs, rhs);
    }
}
