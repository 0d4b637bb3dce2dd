//! Parsers for rational and Gaussian-rational command-line literals.

use num_traits::Signed;
use unitforce::field::rational::parse_rational;
use unitforce::field::{ConstructibleReal as CR, GaussianConstructible as G, Rational};
use unitforce::geometry::PointC;

/// A positive rational `p/q` split into reduced numerator and denominator.
pub fn positive_dsq(s: &str) -> Result<(u64, u64), String> {
    let q = parse_rational(s.trim()).map_err(|e| format!("bad squared distance {s:?}: {e}"))?;
    if !q.is_positive() {
        return Err(format!("squared distance must be positive, got {s}"));
    }
    let conv = |n: &num_bigint::BigInt| u64::try_from(n).map_err(|_| format!("squared distance {s} is too large"));
    Ok((conv(q.numer())?, conv(q.denom())?))
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// `a`, `bi`, `a+bi` or `a-bi` with rational `a`, `b`; `i` alone is `1i`.
pub fn gaussian(s: &str) -> Result<G, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(G::real(CR::from(rational(&t)?)));
    };
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').last().map(|(k, _)| k);
    let (re, im) = match split {
        Some(k) if !body[..k].ends_with('/') => (&body[..k], &body[k..]),
        _ => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x.strip_prefix('+').unwrap_or(x),
    };
    Ok(G::new(CR::from(rational(re)?), CR::from(rational(im)?)))
}

/// Two comma-separated Gaussian literals.
pub fn point(s: &str) -> Result<PointC, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok(PointC::new(gaussian(a)?, gaussian(b)?)),
        _ => Err(format!("complex point needs two coordinates, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_forms() {
        assert_eq!(gaussian("i").unwrap(), G::i());
        assert_eq!(gaussian("-i").unwrap(), G::from_ints(0, -1));
        assert_eq!(gaussian("3").unwrap(), G::from_ints(3, 0));
        assert_eq!(gaussian("1-2i").unwrap(), G::from_ints(1, -2));
        assert_eq!(gaussian("-1+i").unwrap(), G::from_ints(-1, 1));
        let half = gaussian("1/2+3/4i").unwrap();
        assert_eq!(half.re, CR::from(unitforce::field::rational::rat(1, 2)));
        assert!(gaussian("x").is_err());
        assert_eq!(point("0,1+0i").unwrap(), PointC::from_ints(0, 0, 1, 0));
    }

    #[test]
    fn dsq_forms() {
        assert_eq!(positive_dsq("6/8"), Ok((3, 4)));
        assert_eq!(positive_dsq("5"), Ok((5, 1)));
        assert!(positive_dsq("0").is_err());
        assert!(positive_dsq("-1/2").is_err());
    }
}
