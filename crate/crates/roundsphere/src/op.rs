//! Conformally covariant operators on the round sphere: the GJMS family
//! `L_2k`, the scalar-curvature operator `sigma_1`, the tractor-style
//! I-operator, and the trilinear sigma_2-operator with its Dirichlet energy.

use crate::error::{Error, Result};
use crate::num::Rat;
use crate::poly::{Coeff, Poly};
use crate::sphere::{
    check_dim, integrate_poly, integrate_product, reduce, ExactFn, PairTable, SphereFn,
    SphereIntegral, W,
};

/// Order parameter of the GJMS operator `L_2k` on S^n. Requires `2k < n`;
/// `k = 0` is the identity (the empty product).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GjmsOrder {
    n: usize,
    k: usize,
}

impl GjmsOrder {
    pub fn new(n: usize, k: usize) -> Result<GjmsOrder> {
        check_dim(n)?;
        if 2 * k >= n {
            return Err(Error::InvalidOrder { n, k });
        }
        Ok(GjmsOrder { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The order-(2k-2) operator appearing in the commutator identities.
    pub fn lower(&self) -> GjmsOrder {
        assert!(self.k >= 1, "L_0 has no lower order");
        GjmsOrder {
            n: self.n,
            k: self.k - 1,
        }
    }
}

/// Eigenvalue of `L_2k` on degree-l spherical harmonics:
/// `prod_(j=1)^k ( l(l+n-1) + (n-2j)(n+2j-2)/4 )`.
pub fn gjms_eigenvalue(l: usize, ord: GjmsOrder) -> Rat {
    let n = ord.n as i64;
    let li = l as i64;
    let lam = li * (li + n - 1);
    let mut acc = Rat::ONE;
    for j in 1..=ord.k as i64 {
        acc = acc.mul_int(4 * lam + (n - 2 * j) * (n + 2 * j - 2)).div_int(4);
    }
    acc
}

/// Apply `L_2k` spectrally: each harmonic component is scaled by its
/// eigenvalue.
pub fn gjms_apply<C: Coeff>(u: &SphereFn<C>, ord: GjmsOrder) -> SphereFn<C> {
    let n = ord.n as i64;
    let mut out = u.clone();
    for j in 1..=ord.k as i64 {
        let c = (n - 2 * j) * (n + 2 * j - 2);
        out = SphereFn::from_parts(
            u.dim(),
            out.components()
                .iter()
                .map(|(l, p)| {
                    let li = *l as i64;
                    (*l, p.scale_ratio(4 * li * (li + n - 1) + c, 4))
                })
                .collect(),
        );
    }
    out
}

/// Apply `L_2k` as the k-fold composition of the factors `-lap + c_j`.
/// Must agree with the spectral route exactly.
pub fn gjms_apply_composed<C: Coeff>(u: &SphereFn<C>, ord: GjmsOrder) -> SphereFn<C> {
    let n = ord.n as i64;
    let mut w = u.clone();
    for j in 1..=ord.k as i64 {
        let c = (n - 2 * j) * (n + 2 * j - 2);
        w = w.laplace_beltrami().neg().add(&w.scale_ratio(c, 4));
    }
    w
}

/// Dirichlet energy `E_2k(u) = int u L_2k u`, exact.
pub fn gjms_energy(u: &ExactFn, ord: GjmsOrder) -> SphereIntegral {
    SphereIntegral {
        n: u.dim(),
        coeff: gjms_energy_coeff(u, ord),
    }
}

pub fn gjms_energy_coeff<C: Coeff>(u: &SphereFn<C>, ord: GjmsOrder) -> C {
    integrate_product(u, &gjms_apply(u, ord))
}

fn sigma1_from_parts<C: Coeff>(g: &SphereFn<C>, w2: &SphereFn<C>, n: usize) -> SphereFn<C> {
    let ni = n as i64;
    w2.laplace_beltrami()
        .scale_ratio(-(ni - 4), 8)
        .sub(g)
        .add(&w2.scale_ratio(ni * (ni - 4) * (ni - 4), 32))
}

/// `sigma_1(u) = -(n-4)/8 lap(u^2) - |grad u|^2 + (n/2)((n-4)/4)^2 u^2`.
///
/// For positive `u` this computes, up to a power of `u`, the scalar
/// curvature of `u^(8/(n-4)) g_0`; its positivity carves out the admissible
/// set of the sigma_2 energy.
pub fn sigma1<C: Coeff>(u: &SphereFn<C>) -> Result<SphereFn<C>> {
    let n = u.dim();
    check_dim(n)?;
    let t = PairTable::new(u, u);
    let g = reduce(&t.weighted(W::grad_inner), n);
    let w2 = reduce(&t.weighted(|_, _| W::plain()), n);
    Ok(sigma1_from_parts(&g, &w2, n))
}

/// The length-squared of the tractor-D operator, normalized so that on the
/// round sphere (`J = n/2`)
/// `I(u) = -(n+2w-2)/2 |grad u|^2 + w u (lap + w J) u`.
///
/// At `w = -(n-4)/4` this coincides with `sigma_1`. The weight
/// `w = -(n-2)/2` is rejected: the normalization factor is singular there.
pub fn i_operator(u: &ExactFn, w: &Rat) -> Result<ExactFn> {
    let n = u.dim();
    check_dim(n)?;
    let singular = Rat::ratio(-(n as i64 - 2), 2);
    if *w == singular {
        return Err(Error::SingularWeight(format!(
            "w = -(n-2)/2 = {singular} is not allowed"
        )));
    }
    let t = PairTable::new(u, u);
    let g = reduce(&t.weighted(W::grad_inner), n);
    let w2 = reduce(&t.weighted(|_, _| W::plain()), n);
    let u_lap_u = reduce(&t.weighted(|_, m| W::lap_right(m, n)), n);
    // -(n + 2w - 2)/2
    let grad_coef = -(&Rat::ratio(n as i64 - 2, 2) + w);
    let j_half_n = Rat::ratio(n as i64, 2);
    Ok(g
        .scale(&grad_coef)
        .add(&u_lap_u.scale(w))
        .add(&w2.scale(&(&(w * w) * &j_half_n))))
}

/// Weight of the `(g, v)`-shaped table rows in the sigma_2 operator:
/// `1/2 div(g dv) - (n-4)/16 v lap(g)`.
fn sigma2_w_gv(n: usize) -> impl Fn(usize, usize) -> W + Copy {
    let ni = n as i64;
    move |l, m| {
        (W::grad_inner(l, m) + W::lap_right(m, n)).scaled(1, 2)
            + W::lap_left(l, n).scaled(-(ni - 4), 16)
    }
}

/// Weight of the `(u^2, v)`-shaped table rows:
/// `(n-4)/16 div((lap u^2) dv) - c2 v lap(u^2) + c3 u^2 v` with
/// `c2 = (n-1)/4 ((n-4)/4)^2` and `c3 = n(n-1)/8 ((n-4)/4)^3`.
fn sigma2_w_w2v(n: usize) -> impl Fn(usize, usize) -> W + Copy {
    let ni = n as i64;
    move |l, m| {
        let lam = (l * (l + n - 1)) as i64;
        (W::grad_inner(l, m) + W::lap_right(m, n)).scaled(-lam * (ni - 4), 16)
            + W::plain().scaled(lam * (ni - 1) * (ni - 4) * (ni - 4), 64)
            + W::plain().scaled(ni * (ni - 1) * (ni - 4).pow(3), 512)
    }
}

/// The diagonal of the sigma_2-operator,
/// `L(u,u,u) = 1/2 div(|grad u|^2 du)
///   - (n-4)/16 (u lap|grad u|^2 - div((lap u^2) du))
///   - (n-1)/4 ((n-4)/4)^2 u lap(u^2) + n(n-1)/8 ((n-4)/4)^3 u^3`,
/// together with the first polarization `T(a,u,u)` when a direction is
/// given. Both come out of the same two weight assemblies, the polar part
/// by the product rule applied to the table inputs, so the polarization is
/// consistent with the diagonal by construction.
pub fn sigma2_with_polar<C: Coeff>(
    u: &SphereFn<C>,
    dir: Option<&SphereFn<C>>,
) -> Result<(SphereFn<C>, Option<SphereFn<C>>)> {
    let n = u.dim();
    check_dim(n)?;
    let w_gv = sigma2_w_gv(n);
    let w_w2v = sigma2_w_w2v(n);

    let t_uu = PairTable::new(u, u);
    let g0 = reduce(&t_uu.weighted(W::grad_inner), n);
    let w20 = reduce(&t_uu.weighted(|_, _| W::plain()), n);

    let mut diag_amb = PairTable::new(&g0, u).weighted(w_gv);
    diag_amb.add_assign(&PairTable::new(&w20, u).weighted(w_w2v));
    let diag = reduce(&diag_amb, n);

    let polar = match dir {
        None => None,
        Some(a) => {
            assert_eq!(a.dim(), n, "dimension mismatch");
            let t_ua = PairTable::new(u, a);
            let g1 = reduce(&t_ua.weighted(W::grad_inner), n).scale_int(2);
            let w21 = reduce(&t_ua.weighted(|_, _| W::plain()), n).scale_int(2);
            let mut amb = PairTable::new(&g1, u).weighted(w_gv);
            amb.add_assign(&PairTable::new(&g0, a).weighted(w_gv));
            amb.add_assign(&PairTable::new(&w21, u).weighted(w_w2v));
            amb.add_assign(&PairTable::new(&w20, a).weighted(w_w2v));
            Some(reduce(&amb, n).scale_ratio(1, 3))
        }
    };
    Ok((diag, polar))
}

pub fn sigma2_diagonal<C: Coeff>(u: &SphereFn<C>) -> Result<SphereFn<C>> {
    Ok(sigma2_with_polar(u, None)?.0)
}

/// `T(a, u, u)`: the symmetric trilinear sigma_2-operator with one slot
/// polarized. Fast path for the commutator identities.
pub fn sigma2_first_polar<C: Coeff>(a: &SphereFn<C>, u: &SphereFn<C>) -> Result<SphereFn<C>> {
    Ok(sigma2_with_polar(u, Some(a))?.1.unwrap())
}

/// `T(a, u, u)` extracted from the diagonal by rational shifts: evaluate
/// `s -> L(u + s a, ...)` at `s in {0, 1, -1, 2}` and solve for the cubic
/// coefficients exactly.
pub fn sigma2_partial_by_shifts<C: Coeff>(
    a: &SphereFn<C>,
    u: &SphereFn<C>,
) -> Result<SphereFn<C>> {
    let f0 = sigma2_diagonal(u)?;
    let f1 = sigma2_diagonal(&u.add(a))?;
    let fm1 = sigma2_diagonal(&u.sub(a))?;
    let f2 = sigma2_diagonal(&u.add(&a.scale_int(2)))?;
    // cubic coefficient: c3 = (f2 - 3 f1 + 3 f0 - fm1)/6
    let c3 = f2
        .sub(&f1.scale_int(3))
        .add(&f0.scale_int(3))
        .sub(&fm1)
        .scale_ratio(1, 6);
    // linear coefficient: c1 = (f1 - fm1)/2 - c3, and T(a,u,u) = c1/3
    Ok(f1.sub(&fm1).scale_ratio(1, 2).sub(&c3).scale_ratio(1, 3))
}

/// The full symmetric trilinear operator, recovered from the partial
/// diagonals via `T(a,b,c) = (T(a,b+c,b+c) - T(a,b,b) - T(a,c,c)) / 2`.
pub fn sigma2_trilinear<C: Coeff>(
    a: &SphereFn<C>,
    b: &SphereFn<C>,
    c: &SphereFn<C>,
) -> Result<SphereFn<C>> {
    let sum = b.add(c);
    let t_sum = sigma2_partial_by_shifts(a, &sum)?;
    let t_b = sigma2_partial_by_shifts(a, b)?;
    let t_c = sigma2_partial_by_shifts(a, c)?;
    Ok(t_sum.sub(&t_b).sub(&t_c).scale_ratio(1, 2))
}

/// `E_sigma2(u) = int u L(u,u,u)`, exact.
pub fn sigma2_energy(u: &ExactFn) -> Result<SphereIntegral> {
    Ok(SphereIntegral {
        n: u.dim(),
        coeff: sigma2_energy_coeff(u)?,
    })
}

pub fn sigma2_energy_coeff<C: Coeff>(u: &SphereFn<C>) -> Result<C> {
    let diag = sigma2_diagonal(u)?;
    Ok(integrate_product(u, &diag))
}

/// The Dirichlet-form route to the same energy:
/// `int [ |grad u|^2 sigma_1(u) + 1/2 |grad u|^4
///        + (n-2)/2 ((n-4)/4)^2 u^2 |grad u|^2 + n(n-1)/8 ((n-4)/4)^3 u^4 ]`.
pub fn sigma2_energy_dirichlet_coeff<C: Coeff>(u: &SphereFn<C>) -> Result<C> {
    let n = u.dim();
    check_dim(n)?;
    let ni = n as i64;
    let t = PairTable::new(u, u);
    let g = reduce(&t.weighted(W::grad_inner), n);
    let w2 = reduce(&t.weighted(|_, _| W::plain()), n);
    let s1 = sigma1_from_parts(&g, &w2, n);

    let g_amb = g.ambient();
    let w2_amb = w2.ambient();
    let mut integrand = g_amb.mul(&s1.ambient());
    integrand.add_assign(&g_amb.mul(&g_amb).scale_ratio(1, 2));
    integrand.add_assign(
        &w2_amb
            .mul(&g_amb)
            .scale_ratio((ni - 2) * (ni - 4) * (ni - 4), 32),
    );
    integrand.add_assign(
        &w2_amb
            .mul(&w2_amb)
            .scale_ratio(ni * (ni - 1) * (ni - 4).pow(3), 512),
    );
    Ok(integrate_poly(&integrand, n))
}

pub fn sigma2_energy_dirichlet(u: &ExactFn) -> Result<SphereIntegral> {
    Ok(SphereIntegral {
        n: u.dim(),
        coeff: sigma2_energy_dirichlet_coeff(u)?,
    })
}

/// Sharp constant of the order-2k Sobolev inequality on the constraint set:
/// `Gamma((n+2k)/2) / Gamma((n-2k)/2) = prod_(j=1)^k (n-2j)(n+2j-2)/4`,
/// which is also the GJMS eigenvalue on constants.
pub fn sharp_constant_gjms(n: usize, k: usize) -> Result<Rat> {
    Ok(gjms_eigenvalue(0, GjmsOrder::new(n, k)?))
}

/// Sharp constant of the sigma_2 Sobolev inequality:
/// `n(n-1)/8 ((n-4)/4)^3`.
pub fn sharp_constant_sigma2(n: usize) -> Result<Rat> {
    check_dim(n)?;
    let ni = n as i64;
    Ok(Rat::ratio(ni * (ni - 1) * (ni - 4).pow(3), 512))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(s: &str, n: usize) -> ExactFn {
        reduce(&Poly::parse(s, n + 1).unwrap(), n)
    }

    #[test]
    fn eigenvalues_small_cases() {
        let ord = GjmsOrder::new(5, 1).unwrap();
        assert_eq!(gjms_eigenvalue(0, ord), Rat::ratio(15, 4));
        assert_eq!(gjms_eigenvalue(1, ord), Rat::ratio(35, 4));
        // l = 0 eigenvalue is the Gamma ratio: n = 5, k = 2 gives
        // Gamma(9/2)/Gamma(1/2) = (7/2)(5/2)(3/2)(1/2) = 105/16
        let ord2 = GjmsOrder::new(5, 2).unwrap();
        assert_eq!(gjms_eigenvalue(0, ord2), Rat::ratio(105, 16));
        assert!(GjmsOrder::new(5, 3).is_err());
        assert!(GjmsOrder::new(4, 1).is_err());
    }

    #[test]
    fn apply_spectral_vs_composed() {
        let n = 6;
        let u = exact("x0^2 x1 - 2 x3 + 1", n);
        for k in 0..=2 {
            let ord = GjmsOrder::new(n, k).unwrap();
            assert_eq!(gjms_apply(&u, ord), gjms_apply_composed(&u, ord));
        }
        // k = 0 is the identity
        assert_eq!(gjms_apply(&u, GjmsOrder::new(n, 0).unwrap()), u);
    }

    #[test]
    fn gjms_energy_examples() {
        let n = 5;
        let ord = GjmsOrder::new(n, 1).unwrap();
        let one = ExactFn::one(n);
        assert_eq!(gjms_energy(&one, ord).coeff, Rat::ratio(15, 4));
        let x0 = ExactFn::coordinate(n, 0);
        // eigenvalue 35/4 times int (x0)^2 = omega/6
        assert_eq!(gjms_energy(&x0, ord).coeff, Rat::ratio(35, 24));
        // orthogonality of degrees 0 and 1
        let u = one.add(&x0);
        assert_eq!(
            gjms_energy(&u, ord).coeff,
            &Rat::ratio(15, 4) + &Rat::ratio(35, 24)
        );
    }

    #[test]
    fn sigma1_examples() {
        let n = 6;
        let one = ExactFn::one(n);
        // sigma_1(1) = (n/2)((n-4)/4)^2 = 3/4 at n = 6
        assert_eq!(sigma1(&one).unwrap(), ExactFn::constant(n, Rat::ratio(3, 4)));
        // compose the displayed formula by hand for u = x0
        let x0 = ExactFn::coordinate(n, 0);
        let expect = x0
            .multiply(&x0)
            .laplace_beltrami()
            .scale_ratio(-(n as i64 - 4), 8)
            .sub(&x0.grad_inner(&x0))
            .add(&x0.multiply(&x0).scale_ratio(
                n as i64 * (n as i64 - 4) * (n as i64 - 4),
                32,
            ));
        assert_eq!(sigma1(&x0).unwrap(), expect);
    }

    #[test]
    fn i_operator_matches_sigma1() {
        for n in [5usize, 6, 7] {
            let w = Rat::ratio(-(n as i64 - 4), 4);
            for s in ["1", "x0", "x0 x1 - 2 x2 + 1", "x0^2 - x3"] {
                let u = exact(s, n);
                assert_eq!(i_operator(&u, &w).unwrap(), sigma1(&u).unwrap(), "n={n} u={s}");
            }
            // I(1) = w^2 J with J = n/2
            let w1 = Rat::from_int(1);
            assert_eq!(
                i_operator(&ExactFn::one(n), &w1).unwrap(),
                ExactFn::constant(n, Rat::ratio(n as i64, 2))
            );
            // the singular weight is rejected
            let bad = Rat::ratio(-(n as i64 - 2), 2);
            assert!(i_operator(&ExactFn::one(n), &bad).is_err());
        }
    }

    #[test]
    fn sigma2_constant_values() {
        let n = 6;
        let one = ExactFn::one(n);
        let d = sigma2_diagonal(&one).unwrap();
        // n(n-1)/8 ((n-4)/4)^3 = 15/32 at n = 6
        assert_eq!(d, ExactFn::constant(n, Rat::ratio(15, 32)));
        assert_eq!(sigma2_energy(&one).unwrap().coeff, Rat::ratio(15, 32));
        assert_eq!(sharp_constant_sigma2(6).unwrap(), Rat::ratio(15, 32));
        assert_eq!(sharp_constant_sigma2(8).unwrap(), Rat::from_int(7));
    }

    #[test]
    fn polar_matches_shift_interpolation() {
        let n = 5;
        let u = exact("x0 x1 - x2 + 2", n);
        let a = exact("x0^2 - 3 x1", n);
        let fast = sigma2_first_polar(&a, &u).unwrap();
        let slow = sigma2_partial_by_shifts(&a, &u).unwrap();
        assert_eq!(fast, slow);
        // diagonal recovery
        assert_eq!(
            sigma2_trilinear(&u, &u, &u).unwrap(),
            sigma2_diagonal(&u).unwrap()
        );
        assert_eq!(
            sigma2_first_polar(&u, &u).unwrap(),
            sigma2_diagonal(&u).unwrap()
        );
    }

    #[test]
    fn trilinear_symmetry_small() {
        let n = 5;
        let a = exact("x0", n);
        let b = exact("x1 x2", n);
        let c = exact("1 - x3", n);
        let t0 = sigma2_trilinear(&a, &b, &c).unwrap();
        for (p, q, r) in [
            (&b, &a, &c),
            (&c, &b, &a),
            (&a, &c, &b),
            (&b, &c, &a),
            (&c, &a, &b),
        ] {
            assert_eq!(sigma2_trilinear(p, q, r).unwrap(), t0);
        }
        assert_eq!(
            sigma2_trilinear(&ExactFn::one(n), &ExactFn::one(n), &ExactFn::one(n)).unwrap(),
            ExactFn::constant(n, sharp_constant_sigma2(n).unwrap())
        );
    }

    #[test]
    fn dirichlet_identity_small() {
        for n in [5usize, 6] {
            for s in ["1", "x0", "1 + x0 x1"] {
                let u = exact(s, n);
                let lhs = sigma2_energy(&u).unwrap();
                let rhs = sigma2_energy_dirichlet(&u).unwrap();
                assert_eq!(lhs, rhs, "n={n} u={s}");
            }
        }
    }

    #[test]
    fn self_adjointness_gjms() {
        let n = 6;
        let ord = GjmsOrder::new(n, 2).unwrap();
        let u = exact("x0^2 - x1 x2 + 1", n);
        let v = exact("x3 x4 x5 - 2 x0", n);
        let lhs = integrate_product(&v, &gjms_apply(&u, ord));
        let rhs = integrate_product(&u, &gjms_apply(&v, ord));
        assert_eq!(lhs, rhs);
    }
}
