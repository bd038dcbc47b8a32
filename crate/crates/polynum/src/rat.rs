//! Exact rational scalars.

use crate::{Error, Result};
use num::rational::Ratio;
use num::{One, Signed, Zero};

/// Exact rational scalar used for all coordinates, volumes, and
/// polynomial coefficients. `Ratio` keeps values reduced with a positive
/// denominator, so equality and hashing are structural.
pub type Rat = Ratio<i128>;

pub fn rat(n: i128) -> Rat {
    Ratio::from_integer(n)
}

pub fn ratio(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Parses `p` or `p/q` with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |m: &str| Error::Parse(format!("invalid rational {s:?}: {m}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let d: i128 = d.trim().parse().map_err(|_| bad("bad denominator"))?;
        if d == 0 {
            return Err(bad("zero denominator"));
        }
        Ok(Ratio::new(n, d))
    } else {
        let n: i128 = s.parse().map_err(|_| bad("not an integer"))?;
        Ok(Ratio::from_integer(n))
    }
}

/// Renders `p/q` (or just `p` when integral), matching `parse_rat`.
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rat(" 3 / 6 ").unwrap(), ratio(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn reduced_form_hashes_equal() {
        use std::collections::HashSet;
        let mut set = HashSet::new();
        set.insert(ratio(2, 4));
        assert!(set.contains(&ratio(1, 2)));
    }
}
