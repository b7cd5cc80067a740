use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::univariate::{self as up, UPoly};
use crate::error::{Error, Result};

/// Rational function `N(t) / ∏ (1 - t^d)` with an integer numerator.
///
/// Construction reduces the fraction: whole factors `1 - t^d` dividing the
/// numerator are cancelled, then factors are lowered to `1 - t^e` (`e | d`)
/// whenever `(1 - t^d)/(1 - t^e)` divides the numerator. Equality compares the
/// underlying rational functions.
#[derive(Clone, Debug)]
pub struct PoincareSeries {
    numerator: Vec<BigInt>,
    denominator: Vec<u32>,
}

/// Finite value at `t = 1`, or [`Error::PoleAtOne`].
pub fn series_eval_at_one(s: &PoincareSeries) -> Result<BigRational> {
    s.eval_at_one()
}

impl PoincareSeries {
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<u32>) -> Self {
        Self::from_upoly(&up::from_bigints(&numerator), denominator)
            .expect("integer numerator stays integral")
    }

    pub fn from_ints(numerator: &[i64], denominator: &[u32]) -> Self {
        Self::new(numerator.iter().map(|&c| BigInt::from(c)).collect(), denominator.to_vec())
    }

    /// Accepts a rational numerator; fails unless it is integral after reduction.
    pub fn from_upoly(num: &UPoly, mut den: Vec<u32>) -> Result<Self> {
        assert!(den.iter().all(|&d| d > 0), "denominator degrees must be positive");
        let mut num = up::trim(num.clone());
        den.sort_unstable();
        if num.is_empty() {
            return Ok(PoincareSeries { numerator: Vec::new(), denominator: Vec::new() });
        }
        // Cancel whole factors.
        loop {
            let mut changed = false;
            for i in (0..den.len()).rev() {
                if let Some(qt) = up::div_exact(&num, &up::one_minus_t_pow(den[i] as usize)) {
                    num = qt;
                    den.remove(i);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        // Lower factor degrees.
        loop {
            let mut changed = false;
            'outer: for i in (0..den.len()).rev() {
                let d = den[i] as usize;
                for e in (1..d).rev() {
                    if d % e != 0 {
                        continue;
                    }
                    if let Some(qt) = up::div_exact(&num, &up::geometric(d, e)) {
                        num = qt;
                        den[i] = e as u32;
                        changed = true;
                        break 'outer;
                    }
                }
            }
            if !changed {
                break;
            }
            den.sort_unstable();
        }
        let numerator = up::to_integers(&num)
            .ok_or_else(|| Error::Inconsistent("non-integral Poincaré numerator".into()))?;
        Ok(PoincareSeries { numerator, denominator: den })
    }

    pub fn polynomial(coeffs: &[i64]) -> Self {
        Self::from_ints(coeffs, &[])
    }

    /// `∏ 1/(1 - t^d)`: the series of a free graded polynomial ring.
    pub fn free(degrees: &[u32]) -> Self {
        Self::from_ints(&[1], degrees)
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator_degrees(&self) -> &[u32] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn num_upoly(&self) -> UPoly {
        up::from_bigints(&self.numerator)
    }

    fn den_upoly(&self) -> UPoly {
        self.denominator
            .iter()
            .fold(up::one(), |a, &d| up::mul(&a, &up::one_minus_t_pow(d as usize)))
    }

    /// Coefficients of the power series up to and including `t^order`.
    pub fn expand(&self, order: usize) -> Vec<BigInt> {
        up::series_div(&self.num_upoly(), &self.den_upoly(), order)
            .into_iter()
            .map(|c| c.to_integer())
            .collect()
    }

    /// Order of the pole at `t = 1` (0 when the value is finite).
    pub fn pole_order_at_one(&self) -> usize {
        if self.numerator.is_empty() {
            return 0;
        }
        let mut num = self.num_upoly();
        let mut k = self.denominator.len();
        let lin = up::from_ints(&[1, -1]);
        while k > 0 {
            match up::div_exact(&num, &lin) {
                Some(qt) => {
                    num = qt;
                    k -= 1;
                }
                None => break,
            }
        }
        k
    }

    pub fn eval_at_one(&self) -> Result<BigRational> {
        if self.numerator.is_empty() {
            return Ok(BigRational::zero());
        }
        let mut num = self.num_upoly();
        let lin = up::from_ints(&[1, -1]);
        for _ in 0..self.denominator.len() {
            num = up::div_exact(&num, &lin).ok_or(Error::PoleAtOne)?;
        }
        let prod: BigInt = self.denominator.iter().map(|&d| BigInt::from(d)).product();
        Ok(up::eval(&num, &BigRational::one()) / BigRational::from_integer(prod))
    }

    pub fn mul(&self, o: &PoincareSeries) -> PoincareSeries {
        let mut den = self.denominator.clone();
        den.extend_from_slice(&o.denominator);
        Self::from_upoly(&up::mul(&self.num_upoly(), &o.num_upoly()), den).unwrap()
    }

    pub fn add(&self, o: &PoincareSeries) -> PoincareSeries {
        let a = up::mul(&self.num_upoly(), &o.den_upoly());
        let b = up::mul(&o.num_upoly(), &self.den_upoly());
        let mut den = self.denominator.clone();
        den.extend_from_slice(&o.denominator);
        Self::from_upoly(&up::add(&a, &b), den).unwrap()
    }

    /// Multiply by an integer polynomial (e.g. an exterior factor `1 + t^k`).
    pub fn mul_polynomial(&self, p: &[i64]) -> PoincareSeries {
        Self::from_upoly(&up::mul(&self.num_upoly(), &up::from_ints(p)), self.denominator.clone())
            .unwrap()
    }

    /// Divide by `∏ (1 - t^d)`.
    pub fn div_factors(&self, degrees: &[u32]) -> PoincareSeries {
        let mut den = self.denominator.clone();
        den.extend_from_slice(degrees);
        Self::from_upoly(&self.num_upoly(), den).unwrap()
    }

    /// Multiply by `∏ (1 - t^d)`.
    pub fn mul_factors(&self, degrees: &[u32]) -> PoincareSeries {
        let f = degrees
            .iter()
            .fold(up::one(), |a, &d| up::mul(&a, &up::one_minus_t_pow(d as usize)));
        Self::from_upoly(&up::mul(&self.num_upoly(), &f), self.denominator.clone()).unwrap()
    }

    /// Equality of rational functions.
    pub fn same_function(&self, o: &PoincareSeries) -> bool {
        up::mul(&self.num_upoly(), &o.den_upoly()) == up::mul(&o.num_upoly(), &self.den_upoly())
    }

    /// Human-readable truncation `1 + t^2 + … + O(t^{order+1})`.
    pub fn truncated_string(&self, order: usize) -> String {
        let c = self.expand(order);
        let mut s = upoly_string(&c);
        if self.denominator.is_empty() && self.numerator.len() <= order + 1 {
            return s;
        }
        if s == "0" {
            s.clear();
        } else {
            s.push_str(" + ");
        }
        s.push_str(&format!("O(t^{})", order + 1));
        s
    }
}

fn upoly_string(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let abs = a.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl PartialEq for PoincareSeries {
    fn eq(&self, o: &Self) -> bool {
        self.same_function(o)
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = upoly_string(&self.numerator);
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let factors: Vec<String> = self
            .denominator
            .iter()
            .map(|&d| if d == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{d})") })
            .collect();
        let den = if factors.len() == 1 { factors[0].clone() } else { format!("({})", factors.join("")) };
        let num = if self.numerator.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({num})")
        } else {
            num
        };
        write!(f, "{num}/{den}")
    }
}

impl Serialize for PoincareSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PoincareSeries", 4)?;
        let num: Vec<String> = self.numerator.iter().map(|c| c.to_string()).collect();
        st.serialize_field("numerator", &num)?;
        st.serialize_field("denominator_degrees", &self.denominator)?;
        st.serialize_field("factored", &self.to_string())?;
        st.serialize_field("truncated", &self.truncated_string(12))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::qi;

    #[test]
    fn su3_weyl_order_at_one() {
        // (1 - t^4)(1 - t^6) / (1 - t^2)^2
        let num = up::mul(&up::one_minus_t_pow(4), &up::one_minus_t_pow(6));
        let s = PoincareSeries::from_upoly(&num, vec![2, 2]).unwrap();
        assert_eq!(series_eval_at_one(&s).unwrap(), qi(6));
        assert_eq!(s.denominator_degrees(), &[] as &[u32]);
    }

    #[test]
    fn trivial_and_pole() {
        assert_eq!(series_eval_at_one(&PoincareSeries::polynomial(&[1])).unwrap(), qi(1));
        let s = PoincareSeries::free(&[2]);
        assert_eq!(series_eval_at_one(&s), Err(Error::PoleAtOne));
        assert_eq!(s.pole_order_at_one(), 1);
    }

    #[test]
    fn canonical_forms() {
        // (1 + t^4)(1 + t^2) / (1 - t^4)^2 lowers to (1 + t^4)/((1 - t^2)(1 - t^4))
        let num = up::mul(&up::from_ints(&[1, 0, 0, 0, 1]), &up::from_ints(&[1, 0, 1]));
        let s = PoincareSeries::from_upoly(&num, vec![4, 4]).unwrap();
        assert_eq!(s.denominator_degrees(), &[2, 4]);
        assert_eq!(s.to_string(), "(1 + t^4)/((1 - t^2)(1 - t^4))");
        // (1 + t^2 + t^4)(1 + t^3)/(1 - t^6)^2 = 1/((1 - t^2)(1 - t^3))
        let num = up::mul(&up::from_ints(&[1, 0, 1, 0, 1]), &up::from_ints(&[1, 0, 0, 1]));
        let s = PoincareSeries::from_upoly(&num, vec![6, 6]).unwrap();
        assert_eq!(s.denominator_degrees(), &[2, 3]);
        assert_eq!(s.to_string(), "1/((1 - t^2)(1 - t^3))");
    }

    #[test]
    fn arithmetic_matches_expansion() {
        let a = PoincareSeries::free(&[2]);
        let b = PoincareSeries::from_ints(&[1, 0, 1], &[3]);
        let sum = a.add(&b).expand(10);
        let prod = a.mul(&b).expand(10);
        let ea = a.expand(10);
        let eb = b.expand(10);
        for k in 0..=10 {
            assert_eq!(sum[k], &ea[k] + &eb[k]);
            let c: BigInt = (0..=k).map(|i| &ea[i] * &eb[k - i]).sum();
            assert_eq!(prod[k], c);
        }
    }
}
