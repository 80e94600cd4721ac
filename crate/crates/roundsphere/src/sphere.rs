//! Exact calculus on the round sphere (S^n, g0).
//!
//! A smooth polynomial function on S^n is stored canonically as a sum of
//! restricted harmonic homogeneous polynomials, one per degree. Uniqueness of
//! that expansion makes exact equality a structural comparison, so every
//! identity in this crate is checked by reducing both sides and comparing.
//!
//! Sign conventions, fixed once for the whole crate: the Laplace-Beltrami
//! operator has nonpositive spectrum (a degree-l harmonic is an eigenfunction
//! with eigenvalue -l(l+n-1)), and the divergence satisfies
//! `int u div(X) = -int <grad u, X>`.

use crate::error::{Error, Result};
use crate::mono::Mono;
use crate::num::Rat;
use crate::poly::{radius_sq, Coeff, Poly};
use std::fmt;

pub const MIN_DIM: usize = 5;
pub const MAX_DIM: usize = 9;

pub fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { n })
    }
}

/// Function on S^n as a finite sum of restricted harmonic homogeneous
/// polynomials; at most one component per degree, each nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct SphereFn<C: Coeff> {
    n: usize,
    comps: Vec<(usize, Poly<C>)>, // sorted by degree
}

pub type ExactFn = SphereFn<Rat>;

impl<C: Coeff> SphereFn<C> {
    pub fn zero(n: usize) -> Self {
        SphereFn {
            n,
            comps: Vec::new(),
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut comps = Vec::new();
        if !c.is_zero() {
            comps.push((0, Poly::constant(n + 1, c)));
        }
        SphereFn { n, comps }
    }

    pub fn one(n: usize) -> Self {
        SphereFn::constant(n, C::from_int(1))
    }

    /// The coordinate function `x^i`, a first spherical harmonic.
    pub fn coordinate(n: usize, i: usize) -> Self {
        assert!(i <= n, "coordinate index out of range");
        SphereFn {
            n,
            comps: vec![(1, Poly::var(n + 1, i))],
        }
    }

    /// Sphere dimension n (ambient space has n + 1 coordinates).
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.comps.iter().all(|(l, _)| *l == 0)
    }

    /// Largest harmonic degree present.
    pub fn degree(&self) -> usize {
        self.comps.last().map(|(l, _)| *l).unwrap_or(0)
    }

    pub fn components(&self) -> &[(usize, Poly<C>)] {
        &self.comps
    }

    pub fn component(&self, l: usize) -> Option<&Poly<C>> {
        self.comps
            .iter()
            .find_map(|(d, p)| (*d == l).then_some(p))
    }

    /// The canonical ambient representative (sum of the harmonic parts).
    pub fn ambient(&self) -> Poly<C> {
        let mut acc = Poly::zero(self.n + 1);
        for (_, p) in &self.comps {
            acc.add_assign(p);
        }
        acc
    }

    fn from_components(n: usize, mut comps: Vec<(usize, Poly<C>)>) -> Self {
        comps.retain(|(_, p)| !p.is_zero());
        comps.sort_by_key(|(l, _)| *l);
        SphereFn { n, comps }
    }

    /// Assemble from harmonic components. Each entry must be homogeneous of
    /// its stated degree and annihilated by the ambient Laplacian; checked
    /// in debug builds for the exact lane.
    pub fn from_parts(n: usize, comps: Vec<(usize, Poly<C>)>) -> Self {
        if C::EXACT {
            debug_assert!(comps.iter().all(|(l, p)| {
                p.is_zero() || (p.is_homogeneous(*l) && p.laplacian().is_zero())
            }));
        }
        SphereFn::from_components(n, comps)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut comps: Vec<(usize, Poly<C>)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.comps.len() && j < other.comps.len() {
            let (la, lb) = (self.comps[i].0, other.comps[j].0);
            if la == lb {
                let s = self.comps[i].1.add(&other.comps[j].1);
                if !s.is_zero() {
                    comps.push((la, s));
                }
                i += 1;
                j += 1;
            } else if la < lb {
                comps.push(self.comps[i].clone());
                i += 1;
            } else {
                comps.push(other.comps[j].clone());
                j += 1;
            }
        }
        comps.extend_from_slice(&self.comps[i..]);
        comps.extend_from_slice(&other.comps[j..]);
        SphereFn { n: self.n, comps }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SphereFn {
            n: self.n,
            comps: self.comps.iter().map(|(l, p)| (*l, p.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        SphereFn::from_components(
            self.n,
            self.comps.iter().map(|(l, p)| (*l, p.scale(c))).collect(),
        )
    }

    pub fn scale_int(&self, k: i64) -> Self {
        SphereFn::from_components(
            self.n,
            self.comps
                .iter()
                .map(|(l, p)| (*l, p.scale_int(k)))
                .collect(),
        )
    }

    pub fn scale_ratio(&self, p: i64, q: i64) -> Self {
        SphereFn::from_components(
            self.n,
            self.comps
                .iter()
                .map(|(l, t)| (*l, t.scale_ratio(p, q)))
                .collect(),
        )
    }

    /// Laplace-Beltrami operator, spectrally: the degree-l component is
    /// scaled by -l(l+n-1).
    pub fn laplace_beltrami(&self) -> Self {
        let n = self.n as i64;
        SphereFn::from_components(
            self.n,
            self.comps
                .iter()
                .filter(|(l, _)| *l > 0)
                .map(|(l, p)| {
                    let li = *l as i64;
                    (*l, p.scale_int(-li * (li + n - 1)))
                })
                .collect(),
        )
    }

    /// Pointwise product, re-reduced to canonical form.
    pub fn multiply(&self, other: &Self) -> Self {
        self.check_same(other);
        reduce(&PairTable::new(self, other).weighted(|_, _| W::plain()), self.n)
    }

    /// Round-metric inner product of tangential gradients.
    pub fn grad_inner(&self, other: &Self) -> Self {
        self.check_same(other);
        reduce(
            &PairTable::new(self, other).weighted(W::grad_inner),
            self.n,
        )
    }

    /// `div(f du)` for `f = self`, i.e. `<grad f, grad u> + f lap(u)`.
    pub fn divergence_term(&self, u: &Self) -> Self {
        self.check_same(u);
        reduce(
            &PairTable::new(self, u).weighted(|l, m| W::grad_inner(l, m) + W::lap_right(m, u.n)),
            self.n,
        )
    }

    pub fn eval(&self, zeta: &[f64]) -> f64 {
        self.comps.iter().map(|(_, p)| p.eval(zeta)).sum()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> SphereFn<D> {
        SphereFn::from_components(
            self.n,
            self.comps
                .iter()
                .map(|(l, p)| (*l, p.map_coeffs(f)))
                .collect(),
        )
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "dimension mismatch: operands live on different spheres");
    }
}

impl<C: Coeff> fmt::Display for SphereFn<C>
where
    Poly<C>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "[]");
        }
        write!(f, "[")?;
        for (i, (l, p)) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({l}, {p})")?;
        }
        write!(f, "]")
    }
}

/// Canonicalize an ambient polynomial modulo `|x|^2 = 1`.
///
/// Each homogeneous part of degree d splits uniquely as
/// `sum_j |x|^(2j) h_(d-2j)` with every `h` harmonic; dropping the `|x|^2`
/// factors leaves the harmonic expansion of the restriction to the sphere.
/// The split is found by solving against repeated ambient Laplacians: since
/// `lap(|x|^(2j) h_l) = 2j(2l + n + 2j - 1) |x|^(2j-2) h_l` in n+1 variables,
/// the decomposition of `lap p` determines every `h_(d-2j)` with `j >= 1`,
/// and `h_d` is what remains.
pub fn reduce<C: Coeff>(p: &Poly<C>, n: usize) -> SphereFn<C> {
    assert_eq!(p.nvars(), n + 1, "ambient polynomial must have n + 1 variables");
    let mut merged: Vec<(usize, Poly<C>)> = Vec::new();
    for (d, part) in p.homogeneous_parts() {
        for (l, h) in harmonic_split(&part, d, n) {
            if h.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|(dl, _)| *dl == l) {
                Some((_, acc)) => acc.add_assign(&h),
                None => merged.push((l, h)),
            }
        }
    }
    SphereFn::from_components(n, merged)
}

/// Decompose a homogeneous polynomial of degree `d` as
/// `sum_j |x|^(2j) h_(d-2j)`; returns the list of `(d - 2j, h_(d-2j))`.
fn harmonic_split<C: Coeff>(q: &Poly<C>, d: usize, n: usize) -> Vec<(usize, Poly<C>)> {
    if d <= 1 || q.is_zero() {
        return vec![(d, q.clone())];
    }
    let lap = q.laplacian();
    let inner = harmonic_split(&lap, d - 2, n);
    let r2 = radius_sq::<C>(n + 1);
    let mut out: Vec<(usize, Poly<C>)> = Vec::new();
    let mut top = q.clone();
    for (l, g) in inner {
        if g.is_zero() {
            continue;
        }
        // g sits at |x|^(2(j-1)) in lap q, i.e. at |x|^(2j) in q.
        let j = (d - l) as i64 / 2;
        let c = 2 * j * (2 * l as i64 + n as i64 + 2 * j - 1);
        let h = g.div_int(c);
        let mut pw = r2.clone();
        for _ in 1..j {
            pw = pw.mul(&r2);
        }
        top = top.sub(&pw.mul(&h));
        out.push((l, h));
    }
    if C::EXACT {
        debug_assert!(top.laplacian().is_zero(), "top component not harmonic");
    }
    out.push((d, top));
    out
}

/// Bilinear table of component products `f_l * g_m`, the shared substrate
/// for products, gradient pairings and divergence terms: with `f_l`, `g_m`
/// harmonic, `<grad f_l, grad g_m> = lap(f_l g_m) / 2` in the ambient flat
/// metric, and the radial parts are Euler-scaled copies of the same product.
pub struct PairTable<C: Coeff> {
    n: usize,
    pairs: Vec<(usize, usize, Poly<C>)>,
}

/// Weight of one `(l, m)` pair in an assembled operator: a rational multiple
/// of the plain product plus a rational multiple of its ambient Laplacian.
#[derive(Copy, Clone, Default)]
pub struct W {
    pub plain: (i64, i64),
    pub lap: (i64, i64),
}

impl W {
    pub fn plain() -> W {
        W {
            plain: (1, 1),
            lap: (0, 1),
        }
    }

    /// Tangential gradient pairing: `lap(P)/2 - l m P` on the sphere.
    pub fn grad_inner(l: usize, m: usize) -> W {
        W {
            plain: (-((l * m) as i64), 1),
            lap: (1, 2),
        }
    }

    /// Multiply the right factor by its Laplace-Beltrami eigenvalue.
    pub fn lap_right(m: usize, n: usize) -> W {
        W {
            plain: (-((m * (m + n - 1)) as i64), 1),
            lap: (0, 1),
        }
    }

    pub fn lap_left(l: usize, n: usize) -> W {
        W::lap_right(l, n)
    }

    pub fn scaled(self, p: i64, q: i64) -> W {
        W {
            plain: mul_ratio(self.plain, (p, q)),
            lap: mul_ratio(self.lap, (p, q)),
        }
    }
}

impl std::ops::Add for W {
    type Output = W;
    fn add(self, o: W) -> W {
        W {
            plain: add_ratio(self.plain, o.plain),
            lap: add_ratio(self.lap, o.lap),
        }
    }
}

fn mul_ratio(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    norm_ratio((a.0 * b.0, a.1 * b.1))
}

fn add_ratio(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    norm_ratio((a.0 * b.1 + b.0 * a.1, a.1 * b.1))
}

fn norm_ratio((p, q): (i64, i64)) -> (i64, i64) {
    let g = num_integer::Integer::gcd(&p, &q).max(1);
    if q < 0 {
        (-p / g, -q / g)
    } else {
        (p / g, q / g)
    }
}

impl<C: Coeff> PairTable<C> {
    pub fn new(f: &SphereFn<C>, g: &SphereFn<C>) -> Self {
        assert_eq!(f.n, g.n, "dimension mismatch");
        let mut pairs = Vec::with_capacity(f.comps.len() * g.comps.len());
        for (l, fp) in &f.comps {
            for (m, gp) in &g.comps {
                pairs.push((*l, *m, fp.mul(gp)));
            }
        }
        PairTable { n: f.n, pairs }
    }

    /// Assemble `sum_(l,m) w(l,m)` applied to the pair products, as an
    /// unreduced ambient polynomial.
    pub fn weighted(&self, w: impl Fn(usize, usize) -> W) -> Poly<C> {
        let mut plain = Poly::zero(self.n + 1);
        let mut pre_lap = Poly::zero(self.n + 1);
        for (l, m, p) in &self.pairs {
            let wt = w(*l, *m);
            if wt.plain.0 != 0 {
                plain.add_assign(&p.scale_ratio(wt.plain.0, wt.plain.1));
            }
            if wt.lap.0 != 0 {
                pre_lap.add_assign(&p.scale_ratio(wt.lap.0, wt.lap.1));
            }
        }
        plain.add_assign(&pre_lap.laplacian());
        plain
    }
}

/// Exact rational multiple of `omega_n`, the volume of S^n.
#[derive(Clone, PartialEq, Debug)]
pub struct SphereIntegral {
    pub n: usize,
    pub coeff: Rat,
}

impl SphereIntegral {
    pub fn zero(n: usize) -> Self {
        SphereIntegral {
            n,
            coeff: Rat::ZERO,
        }
    }

    pub fn value(&self) -> f64 {
        self.coeff.to_f64() * omega(self.n)
    }
}

impl fmt::Display for SphereIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * omega_n", self.coeff)
    }
}

/// `omega_n = 2 pi^((n+1)/2) / Gamma((n+1)/2)`, in binary64.
pub fn omega(n: usize) -> f64 {
    let m = (n + 1) / 2;
    if (n + 1) % 2 == 0 {
        // Gamma(m) = (m-1)!
        let mut g = 1.0;
        for i in 1..m {
            g *= i as f64;
        }
        2.0 * std::f64::consts::PI.powi(m as i32) / g
    } else {
        // Gamma(m + 1/2) = sqrt(pi) (2m)! / (4^m m!)
        let mut ratio = 1.0; // (2m)! / (4^m m!)
        for i in 1..=m {
            ratio *= (2 * i - 1) as f64 / 2.0;
        }
        2.0 * std::f64::consts::PI.powi(m as i32) / ratio
    }
}

/// Exact integral over S^n of a single monomial, as a multiple of omega_n:
/// zero unless every exponent is even, in which case the value is
/// `prod_i (a_i - 1)!! / prod_(t=0)^(|a|/2 - 1) (n + 1 + 2t)`.
pub fn monomial_moment<C: Coeff>(m: Mono, n: usize) -> C {
    let nv = n + 1;
    let mut total = 0u32;
    for i in 0..nv {
        let e = m.exp(i);
        if e % 2 == 1 {
            return C::zero();
        }
        total += e;
    }
    let mut acc = C::from_int(1);
    for i in 0..nv {
        let e = m.exp(i);
        let mut df = 1i64;
        let mut j = e as i64 - 1;
        while j > 1 {
            df *= j;
            j -= 2;
        }
        if df != 1 {
            acc = acc.mul_int(df);
        }
    }
    for t in 0..(total / 2) as i64 {
        acc = acc.div_int(nv as i64 + 2 * t);
    }
    acc
}

/// Exact integral of an ambient polynomial over the sphere, as the
/// coefficient of omega_n. Works monomial by monomial, so the input does not
/// need to be reduced.
pub fn integrate_poly<C: Coeff>(p: &Poly<C>, n: usize) -> C {
    let mut acc = C::zero();
    for (m, c) in p.terms() {
        let mom = monomial_moment::<C>(*m, n);
        if !mom.is_zero() {
            acc.add_assign_ref(&c.mul_ref(&mom));
        }
    }
    acc
}

/// Exact integral of a sphere function.
pub fn integrate(f: &SphereFn<Rat>) -> SphereIntegral {
    SphereIntegral {
        n: f.n,
        coeff: integrate_poly(&f.ambient(), f.n),
    }
}

/// Integral of a product, computed without reducing the product.
pub fn integrate_product<C: Coeff>(f: &SphereFn<C>, g: &SphereFn<C>) -> C {
    assert_eq!(f.n, g.n, "dimension mismatch");
    integrate_poly(&f.ambient().mul(&g.ambient()), f.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn p(s: &str, nvars: usize) -> Poly<Rat> {
        Poly::parse(s, nvars).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let n = 6;
        // x0 is already harmonic
        let f = reduce(&p("x0", n + 1), n);
        assert_eq!(f.components().len(), 1);
        assert_eq!(f.components()[0].0, 1);

        // (x0)^2 = h2 + |x|^2 / (n+1) with h2 = (x0)^2 - |x|^2/(n+1)
        let f = reduce(&p("x0^2", n + 1), n);
        assert_eq!(f.components().len(), 2);
        assert_eq!(
            *f.component(0).unwrap(),
            Poly::constant(n + 1, Rat::ratio(1, n as i64 + 1))
        );
        let h2 = p("x0^2", n + 1).sub(&radius_sq::<Rat>(n + 1).div_int(n as i64 + 1));
        assert_eq!(*f.component(2).unwrap(), h2);

        // |x|^2 restricts to 1
        let f = reduce(&radius_sq::<Rat>(n + 1), n);
        assert_eq!(f, SphereFn::one(n));
    }

    #[test]
    fn round_trip_reduce() {
        let n = 5;
        for s in ["x0^3 - 2 x1 x2 + 1", "x0^2 x1^2", "x3^4 + x0 x1 x2 x3"] {
            let f = reduce(&p(s, n + 1), n);
            assert_eq!(reduce(&f.ambient(), n), f, "round trip failed for {s}");
        }
    }

    #[test]
    fn laplace_beltrami_eigenvalues() {
        let n = 5;
        assert!(SphereFn::<Rat>::one(n).laplace_beltrami().is_zero());
        let x0 = SphereFn::<Rat>::coordinate(n, 0);
        assert_eq!(x0.laplace_beltrami(), x0.scale_int(-(n as i64)));
        // lap of reduce((x0)^2) = -2(n+1) (x0)^2 + 2 on the sphere
        let f = reduce(&p("x0^2", n + 1), n);
        let lhs = f.laplace_beltrami();
        let rhs = reduce(
            &p("x0^2", n + 1)
                .scale_int(-2 * (n as i64 + 1))
                .add(&Poly::constant(n + 1, Rat::from_int(2))),
            n,
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn grad_inner_examples() {
        let n = 5;
        let x0 = SphereFn::<Rat>::coordinate(n, 0);
        let x1 = SphereFn::<Rat>::coordinate(n, 1);
        let one = SphereFn::<Rat>::one(n);
        assert!(one.grad_inner(&x0).is_zero());
        // <grad x0, grad x0> = 1 - (x0)^2
        assert_eq!(
            x0.grad_inner(&x0),
            reduce(&p("1 - x0^2", n + 1), n)
        );
        // <grad x0, grad x1> = -x0 x1
        assert_eq!(x0.grad_inner(&x1), reduce(&p("-1 x0 x1", n + 1), n));
    }

    #[test]
    fn divergence_examples() {
        let n = 7;
        let x0 = SphereFn::<Rat>::coordinate(n, 0);
        let u = reduce(&p("x0^2 x1 - x2 + 2", n + 1), n);
        let one = SphereFn::<Rat>::one(n);
        // div(du) = lap u
        assert_eq!(one.divergence_term(&u), u.laplace_beltrami());
        // d(1) = 0
        assert!(u.divergence_term(&one).is_zero());
        // div(x0 d x0) = 1 - (n+1)(x0)^2
        let lhs = x0.divergence_term(&x0);
        let rhs = reduce(
            &Poly::one(n + 1).sub(&p("x0^2", n + 1).scale_int(n as i64 + 1)),
            n,
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiply_partition_of_unity() {
        let n = 6;
        let mut acc = SphereFn::<Rat>::zero(n);
        for i in 0..=n {
            let xi = SphereFn::<Rat>::coordinate(n, i);
            acc = acc.add(&xi.multiply(&xi));
        }
        assert_eq!(acc, SphereFn::one(n));
    }

    #[test]
    fn integration_examples() {
        let n = 5;
        assert_eq!(integrate(&SphereFn::one(n)).coeff, Rat::ONE);
        let f = reduce(&p("x0^2", n + 1), n);
        assert_eq!(integrate(&f).coeff, Rat::ratio(1, n as i64 + 1));
        let f4 = reduce(&p("x0^4", n + 1), n);
        assert_eq!(
            integrate(&f4).coeff,
            Rat::ratio(3, ((n + 1) * (n + 3)) as i64)
        );
        // odd monomials vanish
        assert!(integrate(&reduce(&p("x0 x1^2", n + 1), n)).coeff.is_zero());
    }

    #[test]
    fn orthogonality_of_degrees() {
        let n = 5;
        let f = reduce(&p("x0^3", n + 1), n); // degrees 1 and 3
        let h3 = f.component(3).unwrap().clone();
        let h1 = f.component(1).unwrap().clone();
        let a = SphereFn::from_components(n, vec![(3, h3)]);
        let b = SphereFn::from_components(n, vec![(1, h1)]);
        assert!(integrate_product(&a, &b).is_zero());
    }

    #[test]
    fn integration_by_parts() {
        // int u div(f dv) = -int f <grad u, grad v>, exactly
        let n = 5;
        let u = reduce(&p("x0 x1 + x2", n + 1), n);
        let v = reduce(&p("x0^2 - x3", n + 1), n);
        let f = reduce(&p("x1 + 2", n + 1), n);
        let lhs = integrate_product(&u, &f.divergence_term(&v));
        let rhs = integrate_product(&f, &u.grad_inner(&v));
        assert_eq!(lhs, -rhs);
    }

    #[test]
    fn spectral_consistency() {
        // int u lap u = -int <grad u, grad u>
        let n = 6;
        let u = reduce(&p("x0^2 x1 - 3 x4 + 1", n + 1), n);
        let lhs = integrate_product(&u, &u.laplace_beltrami());
        let rhs = integrate(&u.grad_inner(&u)).coeff;
        assert_eq!(lhs, -rhs);
    }

    #[test]
    fn omega_values() {
        // omega_5 = pi^3, omega_6 = 16 pi^3 / 15
        assert!((omega(5) - std::f64::consts::PI.powi(3)).abs() < 1e-12);
        assert!((omega(6) - 16.0 * std::f64::consts::PI.powi(3) / 15.0).abs() < 1e-12);
        // S^2 sanity: 4 pi
        assert!((omega(2) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}
