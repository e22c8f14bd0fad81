use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polyalg::{chebyshev_t, chebyshev_t_eval, Monomial, Poly};

/// An integral domain with exact division, as needed by fraction-free
/// elimination.
pub trait BareissDomain: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn negate(self) -> Self;
    /// `(a * b - c * d) / divisor`, exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, divisor: &Self) -> Result<Self>;
    /// Smaller is a better pivot.
    fn pivot_cost(&self) -> (u64, usize);
}

impl BareissDomain for Poly {
    fn zero() -> Self {
        Poly::zero()
    }

    fn one() -> Self {
        Poly::one()
    }

    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }

    fn negate(self) -> Self {
        -self
    }

    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, divisor: &Self) -> Result<Self> {
        let num = &a.try_mul(b)? - &c.try_mul(d)?;
        if divisor.is_one() {
            Ok(num)
        } else {
            num.exact_div(divisor)
        }
    }

    fn pivot_cost(&self) -> (u64, usize) {
        (self.total_degree().unwrap_or(0), self.num_terms())
    }
}

impl BareissDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn negate(self) -> Self {
        -self
    }

    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, divisor: &Self) -> Result<Self> {
        let num = a * b - c * d;
        let (q, r) = num.div_rem(divisor);
        if Zero::is_zero(&r) {
            Ok(q)
        } else {
            Err(Error::InexactDivision(format!("{num} / {divisor}")))
        }
    }

    fn pivot_cost(&self) -> (u64, usize) {
        (self.abs().bits(), 0)
    }
}

/// Determinant by single-step fraction-free (Bareiss) elimination.
///
/// At each step the pivot is the nonzero entry of the current column with
/// the smallest [`BareissDomain::pivot_cost`], ties broken by row order. A
/// column with no nonzero entry gives determinant zero. Row updates within a
/// step run in parallel.
pub fn det_bareiss<T: BareissDomain>(mut m: Vec<Vec<T>>) -> Result<T> {
    let dim = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != dim) {
        return Err(Error::SizeMismatch(format!(
            "matrix is not square: {dim} rows, a row of length {}",
            row.len()
        )));
    }
    if dim == 0 {
        return Ok(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..dim {
        let pivot = (k..dim)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| (m[r][k].pivot_cost(), r));
        let Some(p) = pivot else {
            return Ok(T::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        tail.par_iter_mut().try_for_each(|row| -> Result<()> {
            for j in k + 1..dim {
                row[j] = T::cross_div(&pivot_row[k], &row[j], &row[k], &pivot_row[j], &prev)?;
            }
            row[k] = T::zero();
            Ok(())
        })?;
        prev = m[k][k].clone();
    }
    let det = m[dim - 1][dim - 1].clone();
    Ok(if negate { det.negate() } else { det })
}

fn binom(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64)
}

/// Closed form for the determinant of the type B join matrix after
/// `a -> a^2`, `d -> d^2`:
///
/// * one variable: `prod_{i=1..n} (T_i(d)^2 - 1)^C(2n, n-i)`
/// * two variables: `a^C(2n, n) * prod_{i=1..n} (T_i(d)^2 - a^2)^C(2n, n-i)`
pub fn det_formula_b(n: usize, two_variable: bool) -> Result<Poly> {
    Error::check_range("determinant formula", n, 1, 6)?;
    let shift = if two_variable {
        Poly::term(1, Monomial::new(2, 0))
    } else {
        Poly::one()
    };
    let mut acc = if two_variable {
        Poly::term(1, Monomial::new(binom(2 * n, n) as u32, 0))
    } else {
        Poly::one()
    };
    for i in 1..=n {
        let t = chebyshev_t(i);
        let factor = &t.try_mul(&t)? - &shift;
        acc = acc.try_mul(&factor.try_pow(binom(2 * n, n - i))?)?;
    }
    Ok(acc)
}

/// [`det_formula_b`] evaluated at integers without expanding the product.
pub fn det_formula_b_eval(n: usize, two_variable: bool, alpha: &BigInt, delta: &BigInt) -> BigInt {
    let one: BigInt = One::one();
    let a = if two_variable { alpha } else { &one };
    let mut acc = if two_variable {
        num_traits::pow(a.clone(), binom(2 * n, n) as usize)
    } else {
        One::one()
    };
    for i in 1..=n {
        let t = chebyshev_t_eval(i, delta);
        let factor = &t * &t - a * a;
        acc *= num_traits::pow(factor, binom(2 * n, n - i) as usize);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Poly {
        Poly::delta()
    }

    fn c(k: i64) -> Poly {
        Poly::constant(k)
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![d(), c(1)], vec![c(1), c(1)]];
        assert_eq!(det_bareiss(m).unwrap(), d() - c(1));

        let ja2 = vec![vec![d() * d(), d()], vec![d(), d()]];
        assert_eq!(det_bareiss(ja2).unwrap(), d() * d() * d() - d() * d());

        let id: Vec<Vec<Poly>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { c(1) } else { c(0) }).collect())
            .collect();
        assert!(det_bareiss(id).unwrap().is_one());
    }

    #[test]
    fn pivoting_and_singular_matrices() {
        // Leading zero forces a row swap.
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(det_bareiss(m).unwrap(), c(-1));
        let m = vec![vec![d(), d()], vec![d(), d()]];
        assert!(det_bareiss(m).unwrap().is_zero());
        let m = vec![vec![c(0), c(1)], vec![c(0), c(2)]];
        assert!(det_bareiss(m).unwrap().is_zero());
        assert!(det_bareiss::<Poly>(vec![]).unwrap().is_one());
        assert!(matches!(
            det_bareiss(vec![vec![c(1), c(2)]]),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn integer_determinant() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(det_bareiss(m).unwrap(), BigInt::from(4));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(det_formula_b(1, false).unwrap(), d() * d() - c(1));
        let a2 = Poly::term(1, Monomial::new(2, 0));
        let expected = &a2 * &(d() * d()) - &a2 * &a2;
        assert_eq!(det_formula_b(1, true).unwrap(), expected);
        assert_eq!(det_formula_b(1, true).unwrap().to_text(), "a^2*d^2-a^4");

        let t2 = d() * d() - c(2);
        let expected = (d() * d() - c(1)).try_pow(4).unwrap() * (&t2 * &t2 - c(1));
        assert_eq!(det_formula_b(2, false).unwrap(), expected);
    }

    #[test]
    fn formula_evaluation_agrees_with_expansion() {
        for n in 1..=3 {
            for two in [false, true] {
                let p = det_formula_b(n, two).unwrap();
                for (a, dl) in [(1, 2), (2, 3), (3, 5), (-2, 7)] {
                    let (a, dl) = (BigInt::from(a), BigInt::from(dl));
                    assert_eq!(p.eval_int(&a, &dl), det_formula_b_eval(n, two, &a, &dl));
                }
            }
        }
    }
}
