//! Packed exponent vectors for sparse multivariate polynomials.
//!
//! A [`Mono`] stores up to 10 exponents in 6-bit fields of a single `u64`,
//! so monomial products are one integer addition and the natural ordering is
//! a cheap total order. [`RankTable`] ranks every monomial of total degree at
//! most `D` into a dense range, which lets polynomial multiplication
//! accumulate into a flat buffer instead of a hash map.

pub const MAX_VARS: usize = 10;
pub const MAX_EXP: u32 = 63;
const BITS: u32 = 6;
const MASK: u64 = (1 << BITS) - 1;

/// Exponent multi-index, packed. Variable `x0` sits in the low bits.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(i: usize) -> Mono {
        assert!(i < MAX_VARS);
        Mono(1 << (BITS * i as u32))
    }

    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent too large");
            m |= (e as u64) << (BITS * i as u32);
        }
        Mono(m)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> (BITS * i as u32)) & MASK) as u32
    }

    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        assert!(e <= MAX_EXP);
        let shift = BITS * i as u32;
        Mono((self.0 & !(MASK << shift)) | ((e as u64) << shift))
    }

    #[inline]
    pub fn total_deg(self, nvars: usize) -> u32 {
        let mut d = 0;
        let mut bits = self.0;
        for _ in 0..nvars {
            d += (bits & MASK) as u32;
            bits >>= BITS;
        }
        d
    }

    /// Product of monomials. Valid while the per-variable exponent sums stay
    /// within the 6-bit fields, which the degree caps in this crate ensure.
    #[inline]
    pub fn mul(self, other: Mono) -> Mono {
        Mono(self.0 + other.0)
    }

    /// Divide by `x_i`, i.e. lower the exponent of variable `i` by one.
    #[inline]
    pub fn div_var(self, i: usize) -> Mono {
        debug_assert!(self.exp(i) > 0);
        Mono(self.0 - (1 << (BITS * i as u32)))
    }

    /// Bit mask of variables with odd exponent, one bit per variable.
    #[inline]
    pub fn parity(self, nvars: usize) -> u32 {
        let mut p = 0;
        for i in 0..nvars {
            p |= (self.exp(i) & 1) << i;
        }
        p
    }

    /// Shift all exponents one variable up and install `e` as the exponent
    /// of `x0`. Used by the recursive sphere quadrature.
    pub fn prepend(self, e: u32) -> Mono {
        assert!(e <= MAX_EXP);
        Mono((self.0 << BITS) | e as u64)
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of monomials in `nvars` variables of total degree at most `deg`.
pub fn monomial_count(nvars: usize, deg: usize) -> usize {
    binomial(deg + nvars, nvars) as usize
}

/// Ranks monomials with `total_deg <= max_deg` into `0..monomial_count`.
///
/// Uses the combinatorial number system on prefix sums: with
/// `T_i = e_0 + ... + e_i`, the rank is `sum_i C(T_i + i, i + 1)`.
pub struct RankTable {
    nvars: usize,
    max_deg: usize,
    // rows[i][t] = C(t + i, i + 1)
    rows: Vec<Vec<u32>>,
    size: usize,
}

impl RankTable {
    pub fn new(nvars: usize, max_deg: usize) -> RankTable {
        assert!(nvars >= 1 && nvars <= MAX_VARS);
        let rows = (0..nvars)
            .map(|i| {
                (0..=max_deg)
                    .map(|t| binomial(t + i, i + 1) as u32)
                    .collect()
            })
            .collect();
        RankTable {
            nvars,
            max_deg,
            rows,
            size: monomial_count(nvars, max_deg),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    #[inline]
    pub fn rank(&self, m: Mono) -> usize {
        let mut t = 0usize;
        let mut r = 0usize;
        for (i, row) in self.rows.iter().enumerate() {
            t += m.exp(i) as usize;
            debug_assert!(t <= self.max_deg);
            r += row[t] as usize;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_monos(nvars: usize, deg: usize) -> Vec<Mono> {
        let mut out = vec![Mono::ONE];
        for _ in 0..deg {
            let mut next: Vec<Mono> = Vec::new();
            for &m in &out {
                for i in 0..nvars {
                    next.push(m.mul(Mono::var(i)));
                }
            }
            out.extend(next);
            out.sort();
            out.dedup();
        }
        out
    }

    #[test]
    fn pack_unpack() {
        let m = Mono::from_exps(&[3, 0, 7, 1]);
        assert_eq!(m.exp(0), 3);
        assert_eq!(m.exp(2), 7);
        assert_eq!(m.total_deg(4), 11);
        assert_eq!(m.mul(Mono::var(1)).exp(1), 1);
        assert_eq!(m.parity(4), 0b1101); // exps 3,0,7,1 -> odd at 0, 2, 3
    }

    #[test]
    fn rank_is_bijective() {
        for (v, d) in [(1, 5), (2, 4), (3, 6), (6, 4), (8, 3)] {
            let table = RankTable::new(v, d);
            let monos = all_monos(v, d);
            assert_eq!(monos.len(), table.size());
            let mut seen = vec![false; table.size()];
            for m in monos {
                let r = table.rank(m);
                assert!(!seen[r], "rank collision at {m:?}");
                seen[r] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(monomial_count(6, 4), 210);
    }
}
