//! Text grammar for polynomials and chains.
//!
//! Polynomials: variables `p1..pN`, `q1..qN` or `y1..y2N`; integer and `a/b`
//! rational literals; operators `+ - * ^`; whitespace insignificant.
//! Example: `p1^2*q1 - 3/2*q2`.
//!
//! Chains: terms `coeff * [a0; a1; ...]` joined by `+`/`-`, one chain per
//! line in chain files. For matrix chains (`r > 1`) an entry may carry a
//! matrix-unit factor `E<i>_<j>` with 1-based indices, e.g.
//! `[1; q1*E1_2; p1]`; entries without a unit mean `poly ⊗ id`.

use crate::mono::Monomial;
use crate::scalar::int;
use crate::weyl::WeylPoly;
use crate::{Error, Mat, MatChain, PolyChain, Rat, Result, Scalar};
use num_traits::One;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => Err(self.error(format!(
                "expected `{}`, found {}",
                c as char,
                got.map_or("end of input".to_string(), |g| format!("`{}`", g as char))
            ))),
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|e| self.error(format!("integer literal: {e}")))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn scalar_uint<T: Scalar>(v: u64) -> T {
    // fold digits so arbitrary precision scalars stay exact
    let mut acc = T::zero();
    for d in v.to_string().bytes() {
        acc = acc * int::<T>(10) + int::<T>((d - b'0') as i64);
    }
    acc
}

/// One multiplicative factor: a rational literal, a variable power, or a
/// matrix unit (only meaningful in chain entries).
enum Factor<T> {
    Scalar(T),
    VarPow(usize, u16), // 0-based variable index, exponent
    MatUnit(usize, usize),
}

fn parse_factor<T: Scalar>(cur: &mut Cursor, n: usize, allow_unit: bool) -> Result<Factor<T>> {
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = cur.uint()?;
            if cur.peek() == Some(b'/') {
                cur.bump();
                let den = cur.uint()?;
                if den == 0 {
                    return Err(cur.error("zero denominator".into()));
                }
                Ok(Factor::Scalar(
                    scalar_uint::<T>(num) / scalar_uint::<T>(den),
                ))
            } else {
                Ok(Factor::Scalar(scalar_uint::<T>(num)))
            }
        }
        Some(b'p') | Some(b'q') | Some(b'y') => {
            let kind = cur.bump().unwrap();
            let idx = cur.uint()? as usize;
            let var = match kind {
                b'p' => {
                    if idx == 0 || idx > n {
                        return Err(cur.error(format!("p index out of range 1..={n}")));
                    }
                    2 * idx - 2
                }
                b'q' => {
                    if idx == 0 || idx > n {
                        return Err(cur.error(format!("q index out of range 1..={n}")));
                    }
                    2 * idx - 1
                }
                _ => {
                    if idx == 0 || idx > 2 * n {
                        return Err(cur.error(format!("y index out of range 1..={}", 2 * n)));
                    }
                    idx - 1
                }
            };
            let mut exp: u16 = 1;
            if cur.peek() == Some(b'^') {
                cur.bump();
                exp = cur.uint()? as u16;
            }
            Ok(Factor::VarPow(var, exp))
        }
        Some(b'E') if allow_unit => {
            cur.bump();
            let i = cur.uint()? as usize;
            cur.expect(b'_')?;
            let j = cur.uint()? as usize;
            if i == 0 || j == 0 {
                return Err(cur.error("matrix unit indices are 1-based".into()));
            }
            Ok(Factor::MatUnit(i - 1, j - 1))
        }
        got => Err(cur.error(format!(
            "expected a literal or variable, found {}",
            got.map_or("end of input".to_string(), |g| format!("`{}`", g as char))
        ))),
    }
}

/// A parsed chain entry: polynomial times optional matrix unit.
struct Entry<T> {
    poly: WeylPoly<T>,
    unit: Option<(usize, usize)>,
}

type SumTerms<T> = Vec<(WeylPoly<T>, Option<(usize, usize)>)>;

fn parse_sum<T: Scalar>(
    cur: &mut Cursor,
    n: usize,
    allow_unit: bool,
    stop: &[u8],
) -> Result<SumTerms<T>> {
    let mut terms: SumTerms<T> = Vec::new();
    loop {
        let mut negate = false;
        while let Some(c) = cur.peek() {
            match c {
                b'-' => {
                    negate = !negate;
                    cur.bump();
                }
                b'+' => {
                    cur.bump();
                }
                _ => break,
            }
        }
        // one product term
        let mut coeff = if negate { -T::one() } else { T::one() };
        let mut mono = Monomial::unit(2 * n);
        let mut unit: Option<(usize, usize)> = None;
        loop {
            match parse_factor::<T>(cur, n, allow_unit)? {
                Factor::Scalar(c) => coeff = coeff * c,
                Factor::VarPow(v, e) => mono.0[v] += e,
                Factor::MatUnit(i, j) => {
                    if unit.is_some() {
                        return Err(cur.error("more than one matrix unit in a term".into()));
                    }
                    unit = Some((i, j));
                }
            }
            if cur.peek() == Some(b'*') {
                cur.bump();
            } else {
                break;
            }
        }
        terms.push((WeylPoly::from_monomial(n, mono, coeff), unit));
        match cur.peek() {
            Some(c) if stop.contains(&c) => break,
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(c) => {
                return Err(cur.error(format!("unexpected `{}`", c as char)));
            }
        }
    }
    Ok(terms)
}

/// Parse a plain polynomial over any scalar type.
pub fn poly<T: Scalar>(input: &str, n: usize) -> Result<WeylPoly<T>> {
    let mut cur = Cursor::new(input);
    let terms = parse_sum::<T>(&mut cur, n, false, &[])?;
    if !cur.at_end() {
        return Err(cur.error("trailing input".into()));
    }
    let mut acc = WeylPoly::zero(n);
    for (p, _) in terms {
        acc = acc.add(&p)?;
    }
    Ok(acc)
}

fn parse_entry(cur: &mut Cursor, n: usize, r: usize) -> Result<Entry<Rat>> {
    let terms = parse_sum::<Rat>(cur, n, r > 1, b";]")?;
    // all terms of one entry must share the matrix unit (or none)
    let unit = terms.first().and_then(|(_, u)| *u);
    let mut poly = WeylPoly::zero(n);
    for (p, u) in terms {
        if u != unit {
            return Err(cur.error(
                "mixed matrix units within one entry; split into separate chain terms".into(),
            ));
        }
        poly = poly.add(&p)?;
    }
    if let Some((i, j)) = unit {
        if i >= r || j >= r {
            return Err(cur.error(format!("matrix unit index out of range 1..={r}")));
        }
    }
    Ok(Entry { poly, unit })
}

/// Parse a chain expression into the matrix complex (use `r = 1` for scalar
/// chains). Grammar: `coeff * [a0; a1; ...]` terms joined by `+`/`-`.
pub fn chain(input: &str, n: usize, r: usize) -> Result<MatChain> {
    let mut cur = Cursor::new(input);
    let mut chain: Option<MatChain> = None;
    loop {
        let mut sign = Rat::one();
        while let Some(c) = cur.peek() {
            match c {
                b'-' => {
                    sign = -sign;
                    cur.bump();
                }
                b'+' => {
                    cur.bump();
                }
                _ => break,
            }
        }
        // optional coefficient
        let mut coeff = sign;
        if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            let num = cur.uint()?;
            let mut c = scalar_uint::<Rat>(num);
            if cur.peek() == Some(b'/') {
                cur.bump();
                let den = cur.uint()?;
                if den == 0 {
                    return Err(cur.error("zero denominator".into()));
                }
                c /= scalar_uint::<Rat>(den);
            }
            coeff *= c;
            cur.expect(b'*')?;
        }
        cur.expect(b'[')?;
        let mut entries: Vec<Mat> = Vec::new();
        loop {
            let entry = parse_entry(&mut cur, n, r)?;
            let mat = match entry.unit {
                Some((i, j)) => Mat::from_poly_unit(entry.poly, r, i, j),
                None => Mat::scalar_poly(entry.poly, r),
            };
            entries.push(mat);
            match cur.peek() {
                Some(b';') => {
                    cur.bump();
                }
                Some(b']') => {
                    cur.bump();
                    break;
                }
                got => {
                    return Err(cur.error(format!(
                        "expected `;` or `]`, found {}",
                        got.map_or("end of input".into(), |g| format!("`{}`", g as char))
                    )))
                }
            }
        }
        let term = MatChain::from_word(coeff, entries)?;
        chain = Some(match chain {
            None => term,
            Some(prev) => prev.add(&term)?,
        });
        match cur.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(c) => return Err(cur.error(format!("unexpected `{}`", c as char))),
        }
    }
    chain.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "empty chain expression".into(),
    })
}

/// Scalar specialization of [`chain`]: every entry must be unit-free.
pub fn poly_chain(input: &str, n: usize) -> Result<PolyChain> {
    let m = chain(input, n, 1)?;
    let mut out = PolyChain::zero(m.degree());
    for (word, coeff) in m.terms() {
        out.add_word(
            coeff.clone(),
            word.iter().map(|e| e.get(0, 0).clone()).collect(),
        )?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Poly;

    #[test]
    fn poly_roundtrip() {
        let f = poly::<Rat>("p1^2*q1 - 3/2*q2", 2).unwrap();
        assert_eq!(format!("{f}"), "p1^2*q1 - 3/2*q2");
        let g = poly::<Rat>(" y1 ^ 2 * y2 - 3/2 * y4 ", 2).unwrap();
        assert_eq!(f, g);
        let sum = poly::<Rat>("p1 + p1 + 1/3 - 2", 1).unwrap();
        assert_eq!(
            sum,
            Poly::p(1, 1)
                .unwrap()
                .scale(&rat(2, 1))
                .add(&Poly::constant(1, rat(-5, 3)))
                .unwrap()
        );
    }

    #[test]
    fn poly_errors_carry_positions() {
        let err = poly::<Rat>("p1 + *", 1).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(poly::<Rat>("p3", 2).is_err());
        assert!(poly::<Rat>("1/0", 1).is_err());
        assert!(poly::<Rat>("p1 p1", 1).is_err());
    }

    #[test]
    fn chain_expressions() {
        let c = poly_chain("[1; p1; q1] - [1; q1; p1]", 1).unwrap();
        let expected = crate::chain::wedge(
            Poly::one(1),
            &[Poly::p(1, 1).unwrap(), Poly::q(1, 1).unwrap()],
        )
        .unwrap();
        assert_eq!(c, expected);
        let scaled = poly_chain("3/2 * [p1*q1; p1; q1]", 1).unwrap();
        assert_eq!(scaled.len(), 1);
        let (_, coeff) = scaled.terms().next().unwrap();
        assert_eq!(coeff, &rat(3, 2));
    }

    #[test]
    fn matrix_chain_units() {
        let c = chain("[1; q1*E1_2; p1]", 1, 2).unwrap();
        assert_eq!(c.degree(), 2);
        // diagonal entries expand into two atoms each: 2 * 1 * 2 words
        assert_eq!(c.len(), 4);
        assert!(chain("[1; q1*E1_3; p1]", 1, 2).is_err());
        // units rejected in the scalar grammar
        assert!(poly_chain("[1; q1*E1_2]", 1).is_err());
    }
}
