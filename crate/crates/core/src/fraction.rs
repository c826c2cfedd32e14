use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clique::CliqueParams;
use crate::error::{Error, Result};

/// A positive rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Fraction> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument(format!("{num}/{den} is not a positive fraction")));
        }
        let g = gcd(num, den);
        Ok(Fraction { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// The clique realising this value with the smallest denominator: `(a, b)`
    /// for `a/b` in lowest terms with `a` even, `(2a, 2b)` otherwise.
    pub fn clique_params(&self) -> Option<CliqueParams> {
        let (p, q) = if self.num.is_multiple_of(2) { (self.num, self.den) } else { (2 * self.num, 2 * self.den) };
        CliqueParams::new(u32::try_from(p).ok()?, u32::try_from(q).ok()?).ok()
    }

    pub fn of_params(params: CliqueParams) -> Fraction {
        Fraction::new(params.p() as u64, params.q() as u64).expect("clique params are positive")
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Fraction) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Fraction) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fraction> {
        let bad = || Error::InvalidArgument(format!("`{s}` is not a fraction p/q"));
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        Fraction::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
    }
}

/// Every value `p/q` with `p` even, `p >= 2q`, `q <= q_max` and
/// `p/q <= ceiling`, once per rational value, in strictly increasing order,
/// each paired with the representative clique of smallest `q`.
pub fn candidate_params(q_max: u32, ceiling: Fraction) -> Vec<(Fraction, CliqueParams)> {
    let mut out: Vec<(Fraction, CliqueParams)> = Vec::new();
    for q in 1..=q_max as u64 {
        // p <= ceiling * q
        let p_max = ceiling.num * q / ceiling.den;
        let mut p = 2 * q;
        while p <= p_max {
            let value = Fraction::new(p, q).expect("positive");
            let params = CliqueParams::new(p as u32, q as u32).expect("p even, p >= 2q");
            out.push((value, params));
            p += 2;
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.q().cmp(&b.1.q())));
    out.dedup_by(|later, earlier| later.0 == earlier.0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: u64, b: u64) -> Fraction {
        Fraction::new(a, b).unwrap()
    }

    #[test]
    fn reduced_and_ordered() {
        assert_eq!(f(20, 6), f(10, 3));
        assert_eq!((f(20, 6).num(), f(20, 6).den()), (10, 3));
        assert!(f(16, 5) < f(10, 3));
        assert!(f(3, 1) < f(16, 5));
        assert_eq!("10/3".parse::<Fraction>().unwrap(), f(10, 3));
        assert_eq!("4".parse::<Fraction>().unwrap(), f(4, 1));
        assert!("x/3".parse::<Fraction>().is_err());
        assert!(Fraction::new(0, 3).is_err());
    }

    #[test]
    fn clique_representatives() {
        assert_eq!(f(5, 2).clique_params(), Some(CliqueParams::new(10, 4).unwrap()));
        assert_eq!(f(10, 3).clique_params(), Some(CliqueParams::new(10, 3).unwrap()));
        assert_eq!(f(3, 1).clique_params(), Some(CliqueParams::new(6, 2).unwrap()));
        assert_eq!(f(3, 2).clique_params(), None);
    }

    #[test]
    fn candidates_are_strictly_increasing_and_deduplicated() {
        let c = candidate_params(10, f(4, 1));
        assert!(c.windows(2).all(|w| w[0].0 < w[1].0));
        assert_eq!(c.first().unwrap().0, f(2, 1));
        assert_eq!(c.last().unwrap().0, f(4, 1));
        let ten_thirds = c.iter().find(|(v, _)| *v == f(10, 3)).unwrap();
        assert_eq!(ten_thirds.1, CliqueParams::new(10, 3).unwrap());
        // brute-force membership: p even, 2q <= p <= 4q, q <= 10
        let mut expected: Vec<Fraction> = Vec::new();
        for q in 1..=10u64 {
            for p in (2 * q..=4 * q).filter(|p| p % 2 == 0) {
                expected.push(f(p, q));
            }
        }
        expected.sort();
        expected.dedup();
        assert_eq!(c.iter().map(|x| x.0).collect::<Vec<_>>(), expected);
    }
}
