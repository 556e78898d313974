//! Exact scalars: rationals, Gaussian rationals, and their text forms.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Rational) -> Gaussian {
    Complex::new(re, Rational::zero())
}

/// Squared modulus of a Gaussian rational, exact.
pub fn norm_sqr(z: &Gaussian) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn to_f64(q: &Rational) -> f64 {
    // Large numerators/denominators overflow `to_f64` on the parts; scale by bit length.
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        q / Rational::from_integer(BigInt::one() << (shift as usize))
    } else {
        q * Rational::from_integer(BigInt::one() << ((-shift) as usize))
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Natural log of a positive rational without overflow.
pub fn ln_rational(q: &Rational) -> f64 {
    debug_assert!(q.is_positive());
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scale a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer_direction(values: &[Rational]) -> Vec<BigInt> {
    let l = lcm_of_denominators(values);
    let ints: Vec<BigInt> = values.iter().map(|q| (q * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(Error::parse("empty rational"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.as_str(), "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(format!("bad integer `{num}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::parse(format!("bad integer `{den}`")))?;
    if d.is_zero() {
        return Err(Error::parse("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"3/2"`, `"-1/2+3i"`, `"2/3i"`, `"i"`, `"-i"`.
pub fn parse_gaussian(s: &str) -> Result<Gaussian> {
    let s: String = s
        .replace('\u{2212}', "-")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if s.is_empty() {
        return Err(Error::parse("empty coefficient"));
    }
    if !s.ends_with('i') {
        return Ok(gauss(parse_rational(&s)?));
    }
    let body = &s[..s.len() - 1];
    // Split at the last sign that is not the leading character.
    let split = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (parse_rational(&body[..i])?, &body[i..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        other => parse_rational(other.trim_start_matches('+'))?,
    };
    Ok(Complex::new(re, im))
}

pub fn format_gaussian(z: &Gaussian) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im = if z.im.is_one() {
        String::new()
    } else if (-&z.im).is_one() {
        "-".to_string()
    } else {
        format_rational(&z.im)
    };
    if z.re.is_zero() {
        format!("{im}i")
    } else if z.im.is_negative() {
        format!("{}{im}i", format_rational(&z.re))
    } else {
        format!("{}+{im}i", format_rational(&z.re))
    }
}

/// Round to 12 significant digits; used wherever floats reach serialized output.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_text_forms() {
        for s in ["3/2", "-1/2+3i", "2/3i", "i", "-i", "1-i", "-7"] {
            let z = parse_gaussian(s).unwrap();
            assert_eq!(parse_gaussian(&format_gaussian(&z)).unwrap(), z, "{s}");
        }
        assert_eq!(parse_gaussian("-1/2+3i").unwrap(), Complex::new(ratio(-1, 2), rat(3)));
        assert_eq!(parse_gaussian("\u{2212}3/2").unwrap(), gauss(ratio(-3, 2)));
        assert!(parse_gaussian("1/0").is_err());
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v = [ratio(1, 2), ratio(-3, 4), rat(0)];
        let p = primitive_integer_direction(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::from_integer(BigInt::from(10).pow(400));
        let ln = ln_rational(&big);
        assert!((ln - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert!(to_f64(&(big.clone() / (big * rat(3)))) - 1.0 / 3.0 < 1e-15);
    }
}
