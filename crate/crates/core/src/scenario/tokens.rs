use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use crate::sign::Sign;

/// A constant sign times a product of named ±1 unknowns. Each token squares
/// to one, so a token is either present or absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignExpr {
    pub constant: Sign,
    pub tokens: BTreeSet<String>,
}

impl SignExpr {
    pub fn constant(sign: Sign) -> Self {
        SignExpr {
            constant: sign,
            tokens: BTreeSet::new(),
        }
    }

    pub fn token(name: impl Into<String>) -> Self {
        Self::constant(Sign::Plus) * name
    }

    pub fn with_tokens<I, S>(sign: Sign, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        tokens.into_iter().fold(Self::constant(sign), |acc, t| acc * t.into())
    }

    /// Value under an assignment of signs to tokens.
    pub fn eval(&self, value: impl Fn(&str) -> Sign) -> Sign {
        self.tokens.iter().fold(self.constant, |acc, t| acc * value(t))
    }

    /// The relation expressed by `self = rhs`.
    pub fn equals(&self, rhs: &SignExpr) -> TokenRelation {
        let p = self.clone() * rhs.clone();
        TokenRelation {
            tokens: p.tokens,
            value: p.constant,
        }
    }
}

impl Mul for SignExpr {
    type Output = SignExpr;
    fn mul(mut self, rhs: SignExpr) -> SignExpr {
        self.constant *= rhs.constant;
        for t in rhs.tokens {
            if !self.tokens.remove(&t) {
                self.tokens.insert(t);
            }
        }
        self
    }
}

impl Mul<Sign> for SignExpr {
    type Output = SignExpr;
    fn mul(mut self, rhs: Sign) -> SignExpr {
        self.constant *= rhs;
        self
    }
}

impl<S: Into<String>> Mul<S> for SignExpr {
    type Output = SignExpr;
    fn mul(mut self, rhs: S) -> SignExpr {
        let t = rhs.into();
        if !self.tokens.remove(&t) {
            self.tokens.insert(t);
        }
        self
    }
}

impl fmt::Display for SignExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.constant.is_plus() { "" } else { "-" };
        if self.tokens.is_empty() {
            return write!(f, "{}", self.constant);
        }
        let body: Vec<&str> = self.tokens.iter().map(String::as_str).collect();
        write!(f, "{c}{}", body.join("·"))
    }
}

/// `Π tokens = value`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TokenRelation {
    pub tokens: BTreeSet<String>,
    pub value: Sign,
}

impl TokenRelation {
    pub fn holds(&self, value: impl Fn(&str) -> Sign) -> bool {
        self.tokens.iter().fold(Sign::Plus, |acc, t| acc * value(t)) == self.value
    }
}

impl fmt::Display for TokenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<&str> = self.tokens.iter().map(String::as_str).collect();
        let lhs = if body.is_empty() {
            "1".to_string()
        } else {
            body.join("·")
        };
        write!(f, "{lhs} = {}", self.value)
    }
}
