use std::fmt;
use std::iter::Product;
use std::ops::{Mul, MulAssign, Neg};

/// A sign token in {+1, -1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^p`, for any integer `p`.
    pub fn from_parity(p: i64) -> Sign {
        if p.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_bool_negative(negative: bool) -> Sign {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// Sign of a nonzero integer-like quantity given as `i64`.
    pub fn of_i64(x: i64) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// 0 for `Plus`, 1 for `Minus`.
    pub fn parity(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * b)
    }
}

impl<'a> Product<&'a Sign> for Sign {
    fn product<I: Iterator<Item = &'a Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * *b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Parity of an integer as 0 or 1.
pub fn parity(x: i64) -> u8 {
    x.rem_euclid(2) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_handles_negatives() {
        assert_eq!(Sign::from_parity(-3), Sign::Minus);
        assert_eq!(Sign::from_parity(-4), Sign::Plus);
        assert_eq!(parity(-1), 1);
    }

    #[test]
    fn group_law() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(-Sign::Plus, Sign::Minus);
        let p: Sign = [Sign::Minus, Sign::Minus, Sign::Minus].iter().product();
        assert_eq!(p, Sign::Minus);
    }
}
