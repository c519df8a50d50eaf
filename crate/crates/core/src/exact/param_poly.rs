//! Sparse multivariate polynomials over Q in the controller-parameter
//! symbols.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{self, parse_rational};
use super::ring::Ring;
use super::{BigRat, ExactError};

pub const SYMBOL_COUNT: usize = 9;

type IntTerms = BTreeMap<Monomial, BigInt>;

/// Controller tuning parameters that may appear symbolically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Lambda,
    Mu,
    Alpha,
    X,
    Kp,
    Ki,
    Kd,
    Kc,
    T,
}

impl Symbol {
    pub const ALL: [Symbol; SYMBOL_COUNT] = [
        Symbol::Lambda,
        Symbol::Mu,
        Symbol::Alpha,
        Symbol::X,
        Symbol::Kp,
        Symbol::Ki,
        Symbol::Kd,
        Symbol::Kc,
        Symbol::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Lambda => "lambda",
            Symbol::Mu => "mu",
            Symbol::Alpha => "alpha",
            Symbol::X => "x",
            Symbol::Kp => "Kp",
            Symbol::Ki => "Ki",
            Symbol::Kd => "Kd",
            Symbol::Kc => "Kc",
            Symbol::T => "T",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over [`Symbol::ALL`], ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u32; SYMBOL_COUNT]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(sym: Symbol, exp: u32) -> Self {
        let mut m = Monomial::default();
        m.0[sym.index()] = exp;
        m
    }

    pub fn exponent(&self, sym: Symbol) -> u32 {
        self.0[sym.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a += b;
        }
        out
    }

    fn div(&self, other: &Self) -> Option<Self> {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    fn without(&self, sym: Symbol) -> Self {
        let mut out = *self;
        out.0[sym.index()] = 0;
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the parameter symbols with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, BigRat>,
}

impl ParamPoly {
    pub fn constant(c: BigRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(sym: Symbol) -> Self {
        Self::monomial(BigRat::one(), Monomial::var(sym, 1))
    }

    pub fn monomial(c: BigRat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRat)>) -> Self {
        let mut out = ParamPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_univariate(sym: Symbol, coeffs: &[BigRat]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(sym, k as u32), c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRat {
        self.terms.get(m).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRat)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        self.is_constant()
            .then(|| self.coefficient(&Monomial::one()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, sym: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(sym)).max().unwrap_or(0)
    }

    /// Symbols with a nonzero exponent somewhere.
    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|&s| self.terms.keys().any(|m| m.exponent(s) > 0))
            .collect()
    }

    /// Ascending coefficients when `self` only involves `sym`.
    pub fn univariate_coeffs(&self, sym: Symbol) -> Option<Vec<BigRat>> {
        let mut out = vec![BigRat::zero(); self.degree_in(sym) as usize + 1];
        for (m, c) in &self.terms {
            if !m.without(sym).is_one() {
                return None;
            }
            out[m.exponent(sym) as usize] = c.clone();
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Some(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = ParamPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        if r.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    /// Replaces `sym` by `value` everywhere.
    pub fn substitute(&self, sym: Symbol, value: &ParamPoly) -> Self {
        let mut powers: Vec<ParamPoly> = vec![ParamPoly::one()];
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(sym) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = ParamPoly::monomial(c.clone(), m.without(sym));
            out = out + &rest * &powers[e];
        }
        out
    }

    pub fn substitute_rat(&self, sym: Symbol, value: &BigRat) -> Self {
        self.substitute(sym, &ParamPoly::constant(value.clone()))
    }

    /// Substitutes every listed symbol; the result is constant when all
    /// occurring symbols are covered.
    pub fn evaluate(&self, assignment: &[(Symbol, BigRat)]) -> Self {
        assignment
            .iter()
            .fold(self.clone(), |p, (s, v)| p.substitute_rat(*s, v))
    }

    pub fn evaluate_f64(&self, assignment: &[(Symbol, f64)]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = rational::to_f64(c);
                for (s, x) in assignment {
                    v *= x.powi(m.exponent(*s) as i32);
                }
                v
            })
            .sum()
    }

    /// Multivariate exact division by repeated leading-term reduction.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = divisor.leading_term()?;
        if divisor.is_constant() {
            return Some(self.scale(&lc.recip()));
        }
        if self.is_zero() {
            return Some(ParamPoly::zero());
        }
        let lm = *lm;
        // Both sides as content times a primitive integer polynomial. By
        // Gauss's lemma an exact quotient of the integer parts is integral,
        // so every step is an integer division.
        let (sa, mut rem) = self.integer_form();
        let (sb, b) = divisor.integer_form();
        let lc = b[&lm].clone();
        let mut quot = IntTerms::new();
        while let Some((rm, rc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let m = rm.div(&lm)?;
            let (q, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &b {
                let key = dm.mul(&m);
                let delta = dc * &q;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.insert(m, q);
        }
        Some(ParamPoly::from_integer_form(&(sa / sb), quot))
    }

    /// `content · P` with `P` a primitive integer polynomial.
    fn integer_form(&self) -> (BigRat, IntTerms) {
        let content = Ring::rational_content(self);
        if content.is_zero() {
            return (BigRat::one(), IntTerms::new());
        }
        let inv = content.recip();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, (c * &inv).to_integer()))
            .collect();
        (content, terms)
    }

    fn from_integer_form(scale: &BigRat, terms: IntTerms) -> ParamPoly {
        ParamPoly {
            terms: terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, BigRat::from_integer(c) * scale))
                .collect(),
        }
    }

    /// Positive content and sign-normalized primitive part.
    pub fn normalize(&self) -> (BigRat, ParamPoly) {
        poly_normalize(self)
    }
}

/// Splits `p` into `content · primitive` where the primitive part has
/// coprime integer coefficients and a positive greatest (graded-lex) term.
pub fn poly_normalize(p: &ParamPoly) -> (BigRat, ParamPoly) {
    if p.is_zero() {
        return (BigRat::zero(), ParamPoly::zero());
    }
    let mut content = p.rational_content();
    if !p.leading_positive() {
        content = -content;
    }
    let primitive = p.scale(&content.recip());
    (content, primitive)
}

/// Monic GCD of two univariate polynomials in the same symbol.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> Result<ParamPoly, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::GcdUndefined);
    }
    let mut syms = a.symbols();
    for s in b.symbols() {
        if !syms.contains(&s) {
            syms.push(s);
        }
    }
    if syms.len() > 1 {
        return Err(ExactError::NotUnivariate);
    }
    let sym = syms.first().copied().unwrap_or(Symbol::Lambda);
    let ua = a.univariate_coeffs(sym).expect("checked univariate");
    let ub = b.univariate_coeffs(sym).expect("checked univariate");
    Ok(ParamPoly::from_univariate(
        sym,
        &rational::univariate_gcd(&ua, &ub),
    ))
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        ParamPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        ParamPoly::constant(BigRat::one())
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;

    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c.clone());
        }
        big
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;

    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;

    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;

    fn sub(mut self, rhs: ParamPoly) -> ParamPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;

    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let (sa, a) = self.integer_form();
        let (sb, b) = rhs.integer_form();
        let mut acc = IntTerms::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        ParamPoly::from_integer_form(&(sa * sb), acc)
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;

    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;

    fn neg(mut self) -> ParamPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;

    fn neg(self) -> ParamPoly {
        -self.clone()
    }
}

impl From<BigRat> for ParamPoly {
    fn from(c: BigRat) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<Symbol> for ParamPoly {
    fn from(s: Symbol) -> Self {
        ParamPoly::var(s)
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::constant(rational::int(n))
    }
}

impl Ring for ParamPoly {
    fn from_rat(r: &BigRat) -> Self {
        ParamPoly::constant(r.clone())
    }

    fn to_rat(&self) -> Option<BigRat> {
        self.constant_value()
    }

    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div_exact(divisor)
    }

    fn scale(&self, r: &BigRat) -> Self {
        ParamPoly::scale(self, r)
    }

    fn rational_content(&self) -> BigRat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRat::zero()
        } else {
            BigRat::new(num, den)
        }
    }

    fn leading_positive(&self) -> bool {
        self.leading_term().is_some_and(|(_, c)| c.is_positive())
    }

    fn weight(&self) -> usize {
        self.terms.len()
    }

    fn common_factor(items: &[Self]) -> Option<Self> {
        let mut sym = None;
        for p in items {
            for s in p.symbols() {
                match sym {
                    None => sym = Some(s),
                    Some(t) if t != s => return None,
                    _ => {}
                }
            }
        }
        let sym = sym?;
        let mut g: Option<Vec<BigRat>> = None;
        for p in items.iter().filter(|p| !p.is_zero()) {
            let u = p.univariate_coeffs(sym)?;
            g = Some(match g {
                None => u,
                Some(prev) => rational::univariate_gcd(&prev, &u),
            });
            if g.as_ref().is_some_and(|v| v.len() <= 1) {
                return None;
            }
        }
        let g = g?;
        (g.len() > 1).then(|| ParamPoly::from_univariate(sym, &g))
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                factors.push(mag.to_string());
            }
            for s in Symbol::ALL {
                match m.exponent(s) {
                    0 => {}
                    1 => factors.push(s.name().to_string()),
                    e => factors.push(format!("{}^{e}", s.name())),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for ParamPoly {
    type Err = ExactError;

    /// Parses sums and products of rationals and symbol names with
    /// non-negative integer powers and parentheses, e.g.
    /// `"(840*lambda + 3360)*Kd^2 - 7/16"`. Juxtaposition multiplies.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(ExactError::Parse(format!(
                "trailing input in polynomial {s:?}"
            )));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, ExactError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(ExactError::Parse(format!("unexpected {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err(&self, what: &str) -> ExactError {
        ExactError::Parse(format!("{what} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<ParamPoly, ExactError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ParamPoly, ExactError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    let d = d
                        .constant_value()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.err("division by a non-constant or zero"))?;
                    acc = acc.scale(&d.recip());
                }
                Some(Token::Num(_) | Token::Ident(_) | Token::Op('(')) => {
                    acc = acc * self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ParamPoly, ExactError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ParamPoly, ExactError> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| self.err("bad exponent"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ParamPoly, ExactError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(ParamPoly::constant(parse_rational(&n)?))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Symbol::from_name(&name)
                    .map(ParamPoly::var)
                    .ok_or_else(|| ExactError::Parse(format!("unknown symbol {name:?}")))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("expected a number, symbol or '('")),
        }
    }
}
