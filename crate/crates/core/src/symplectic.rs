//! Generators of `Sp(2g, Z)` and decomposition of symplectic matrices into
//! words in those generators.
//!
//! `A_k` and `B_k` are the upper and lower unipotent transvections on the
//! `k`-th coordinate pair. `C_k` couples pairs `k` and `k + 1`: it adds the
//! second coordinate of pair `k + 1` into the second coordinate of pair `k`
//! and subtracts the first coordinate of pair `k` from the first coordinate of
//! pair `k + 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::{Int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    A,
    B,
    C,
}

/// One generator with exponent `+1` or `-1`. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub index: usize,
    pub exp: i32,
}

impl Letter {
    pub fn new(gen: Gen, index: usize, exp: i32) -> Letter {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, index, exp }
    }

    pub fn a(index: usize, exp: i32) -> Letter {
        Letter::new(Gen::A, index, exp)
    }

    pub fn b(index: usize, exp: i32) -> Letter {
        Letter::new(Gen::B, index, exp)
    }

    pub fn c(index: usize, exp: i32) -> Letter {
        Letter::new(Gen::C, index, exp)
    }

    pub fn inverse(self) -> Letter {
        Letter {
            exp: -self.exp,
            ..self
        }
    }

    fn check(&self, genus: usize) -> Result<()> {
        let top = match self.gen {
            Gen::A | Gen::B => genus,
            Gen::C => genus.saturating_sub(1),
        };
        if self.index == 0 || self.index > top {
            return Err(Error::BadIndex {
                index: self.index,
                genus,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.gen {
            Gen::A => 'A',
            Gen::B => 'B',
            Gen::C => 'C',
        };
        write!(f, "{g}{}", self.index)?;
        if self.exp < 0 {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let bad = || Error::Parse(format!("not a generator letter: {s:?}"));
        let mut chars = s.chars();
        let gen = match chars.next() {
            Some('A') => Gen::A,
            Some('B') => Gen::B,
            Some('C') => Gen::C,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (idx, exp) = match rest.split_once('^') {
            Some((i, "-1")) => (i, -1),
            Some((i, "1")) => (i, 1),
            Some(_) => return Err(bad()),
            None => (rest, 1),
        };
        let index = idx.parse().map_err(|_| bad())?;
        Ok(Letter { gen, index, exp })
    }
}

/// Product of letters, read left to right as a matrix product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub genus: usize,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(genus: usize, letters: Vec<Letter>) -> Result<GeneratorWord> {
        for l in &letters {
            l.check(genus)?;
        }
        Ok(GeneratorWord { genus, letters })
    }

    pub fn identity(genus: usize) -> GeneratorWord {
        GeneratorWord {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn parse(genus: usize, text: &str) -> Result<GeneratorWord> {
        let letters = text
            .split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()?;
        GeneratorWord::new(genus, letters)
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The standard form: `g` diagonal copies of `[[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    pub genus: usize,
    pub j: IntMatrix,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> SymplecticForm {
        let mut j = IntMatrix::zeros(2 * genus);
        for k in 0..genus {
            j.set(2 * k, 2 * k + 1, Int::from(1));
            j.set(2 * k + 1, 2 * k, Int::from(-1));
        }
        SymplecticForm { genus, j }
    }
}

pub fn generator_matrix(l: Letter, genus: usize) -> Result<IntMatrix> {
    l.check(genus)?;
    let mut m = IntMatrix::identity(2 * genus);
    apply_left(&mut m, l);
    Ok(m)
}

pub fn is_symplectic(m: &IntMatrix, form: &SymplecticForm) -> Result<bool> {
    if m.size() != form.j.size() {
        return Err(Error::SizeMismatch(format!(
            "matrix is {0}x{0}, form is {1}x{1}",
            m.size(),
            form.j.size()
        )));
    }
    Ok(&(&m.transpose() * &form.j) * m == form.j)
}

pub fn compose(w: &GeneratorWord) -> IntMatrix {
    let mut m = IntMatrix::identity(2 * w.genus);
    for l in w.letters.iter().rev() {
        apply_left(&mut m, *l);
    }
    m
}

/// `m <- G * m` as row operations.
fn apply_left(m: &mut IntMatrix, l: Letter) {
    let p = 2 * (l.index - 1);
    let e = Int::from(l.exp);
    match l.gen {
        Gen::A => m.add_row_multiple(p, p + 1, &e),
        Gen::B => m.add_row_multiple(p + 1, p, &e),
        Gen::C => {
            m.add_row_multiple(p + 1, p + 3, &e);
            m.add_row_multiple(p + 2, p, &-e);
        }
    }
}

/// `m <- m * G` as column operations.
fn apply_right(m: &mut IntMatrix, l: Letter) {
    let p = 2 * (l.index - 1);
    let e = Int::from(l.exp);
    match l.gen {
        Gen::A => m.add_col_multiple(p + 1, p, &e),
        Gen::B => m.add_col_multiple(p, p + 1, &e),
        Gen::C => {
            m.add_col_multiple(p + 3, p + 1, &e);
            m.add_col_multiple(p, p + 2, &-e);
        }
    }
}

/// Quarter turn on pair `k`: `(r0, r1) -> (r1, -r0)` on rows.
pub fn rotation_word(k: usize) -> Vec<Letter> {
    vec![Letter::a(k, 1), Letter::b(k, -1), Letter::a(k, 1)]
}

/// `C_k` conjugated by the quarter turns on pairs `k` and `k + 1`. As a row
/// operation it adds the first row of pair `k + 1` into the first row of
/// pair `k`, and subtracts the second row of pair `k` from the second row of
/// pair `k + 1`.
pub fn cross_word(k: usize, exp: i32) -> Vec<Letter> {
    let mut w = rotation_word(k);
    w.extend(rotation_word(k + 1));
    w.push(Letter::c(k, exp));
    w.extend(inverse_letters(&rotation_word(k + 1)));
    w.extend(inverse_letters(&rotation_word(k)));
    w
}

fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Which side of the working matrix an operation multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Reduction state: `lefts * u * rights = work` with both sides stored as the
/// letters applied so far.
struct Reducer<'a> {
    work: IntMatrix,
    form: SymplecticForm,
    lefts: Vec<Letter>,
    rights: Vec<Letter>,
    trace: &'a mut dyn FnMut(Side, Letter, &IntMatrix),
}

fn nearest_quotient(a: &Int, b: &Int) -> Int {
    Rational::new(a.clone(), b.clone()).round().to_integer()
}

impl Reducer<'_> {
    fn left(&mut self, l: Letter) -> Result<()> {
        apply_left(&mut self.work, l);
        self.lefts.push(l);
        self.after(Side::Left, l)
    }

    fn right(&mut self, l: Letter) -> Result<()> {
        apply_right(&mut self.work, l);
        self.rights.push(l);
        self.after(Side::Right, l)
    }

    fn after(&mut self, side: Side, l: Letter) -> Result<()> {
        (self.trace)(side, l, &self.work);
        if !is_symplectic(&self.work, &self.form)? {
            return Err(Error::InternalCheckFailed(format!(
                "form lost after {side:?} multiplication by {l}"
            )));
        }
        Ok(())
    }

    fn left_word(&mut self, w: &[Letter]) -> Result<()> {
        for l in w.iter().rev() {
            self.left(*l)?;
        }
        Ok(())
    }

    fn right_word(&mut self, w: &[Letter]) -> Result<()> {
        for l in w {
            self.right(*l)?;
        }
        Ok(())
    }

    fn left_power(&mut self, gen: Gen, k: usize, n: &Int) -> Result<()> {
        self.power(Side::Left, gen, k, n)
    }

    fn right_power(&mut self, gen: Gen, k: usize, n: &Int) -> Result<()> {
        self.power(Side::Right, gen, k, n)
    }

    fn power(&mut self, side: Side, gen: Gen, k: usize, n: &Int) -> Result<()> {
        let exp = if n.is_negative() { -1 } else { 1 };
        let mut count = n.abs();
        while !count.is_zero() {
            let l = Letter::new(gen, k, exp);
            match side {
                Side::Left => self.left(l)?,
                Side::Right => self.right(l)?,
            }
            count -= 1;
        }
        Ok(())
    }

    fn cross_power(&mut self, side: Side, k: usize, n: &Int) -> Result<()> {
        let exp = if n.is_negative() { -1 } else { 1 };
        let mut count = n.abs();
        while !count.is_zero() {
            let w = cross_word(k, exp);
            match side {
                Side::Left => self.left_word(&w)?,
                Side::Right => self.right_word(&w)?,
            }
            count -= 1;
        }
        Ok(())
    }

    fn at(&self, i: usize, j: usize) -> Int {
        self.work.get(i, j).clone()
    }

    /// Clears column `2 * p0` below and above the pivot, leaving `+1` on it.
    fn clear_column(&mut self, p0: usize) -> Result<()> {
        let g = self.form.genus;
        let c = 2 * p0;
        for p in p0..g {
            let k = p + 1;
            let (r0, r1) = (2 * p, 2 * p + 1);
            loop {
                let (a, b) = (self.at(r0, c), self.at(r1, c));
                if a.is_zero() || b.is_zero() {
                    break;
                }
                if a.abs() >= b.abs() {
                    self.left_power(Gen::A, k, &-nearest_quotient(&a, &b))?;
                } else {
                    self.left_power(Gen::B, k, &-nearest_quotient(&b, &a))?;
                }
            }
            if self.at(r0, c).is_zero() && !self.at(r1, c).is_zero() {
                self.left_word(&rotation_word(k))?;
            }
        }
        for p in (p0..g.saturating_sub(1)).rev() {
            let k = p + 1;
            let (r, s) = (2 * p, 2 * p + 2);
            loop {
                let (a, b) = (self.at(r, c), self.at(s, c));
                if a.is_zero() || b.is_zero() {
                    break;
                }
                if a.abs() >= b.abs() {
                    self.cross_power(Side::Left, k, &-nearest_quotient(&a, &b))?;
                } else {
                    self.left_power(Gen::C, k, &nearest_quotient(&b, &a))?;
                }
            }
            if self.at(r, c).is_zero() && !self.at(s, c).is_zero() {
                self.cross_power(Side::Left, k, &Int::from(1))?;
                self.left_power(Gen::C, k, &Int::from(1))?;
            }
        }
        let pivot = self.at(c, c);
        if pivot == Int::from(-1) {
            let w = rotation_word(p0 + 1);
            self.left_word(&w)?;
            self.left_word(&w)?;
        } else if pivot != Int::from(1) {
            return Err(Error::InternalCheckFailed(format!(
                "column {c} reduced to pivot {pivot}"
            )));
        }
        Ok(())
    }

    /// Clears row `2 * p0` away from the pivot using column operations that
    /// never modify the pivot column.
    fn clear_row(&mut self, p0: usize) -> Result<()> {
        let g = self.form.genus;
        let r = 2 * p0;
        for p in p0 + 1..g {
            let k = p + 1;
            let (c0, c1) = (2 * p, 2 * p + 1);
            loop {
                let (a, b) = (self.at(r, c0), self.at(r, c1));
                if a.is_zero() || b.is_zero() {
                    break;
                }
                if a.abs() >= b.abs() {
                    self.right_power(Gen::B, k, &-nearest_quotient(&a, &b))?;
                } else {
                    self.right_power(Gen::A, k, &-nearest_quotient(&b, &a))?;
                }
            }
            if self.at(r, c0).is_zero() && !self.at(r, c1).is_zero() {
                // (c0, c1) -> (-c1, c0)
                self.right_word(&rotation_word(k))?;
            }
        }
        for p in (p0 + 1..g.saturating_sub(1)).rev() {
            let k = p + 1;
            let (c, d) = (2 * p, 2 * p + 2);
            loop {
                let (a, b) = (self.at(r, c), self.at(r, d));
                if a.is_zero() || b.is_zero() {
                    break;
                }
                if a.abs() >= b.abs() {
                    self.right_power(Gen::C, k, &nearest_quotient(&a, &b))?;
                } else {
                    self.cross_power(Side::Right, k, &-nearest_quotient(&b, &a))?;
                }
            }
            if self.at(r, c).is_zero() && !self.at(r, d).is_zero() {
                self.right_power(Gen::C, k, &Int::from(-1))?;
                self.cross_power(Side::Right, k, &Int::from(-1))?;
            }
        }
        if p0 + 1 < g {
            let w = self.at(r, 2 * p0 + 2);
            self.cross_power(Side::Right, p0 + 1, &-w)?;
        }
        let v = self.at(r, 2 * p0 + 1);
        self.right_power(Gen::A, p0 + 1, &-v)?;

        let n = 2 * g;
        let unit = |i: usize, j: usize| if i == j { Int::from(1) } else { Int::zero() };
        for j in 0..n {
            if *self.work.get(r, j) != unit(r, j)
                || *self.work.get(j, r) != unit(j, r)
                || *self.work.get(r + 1, j) != unit(r + 1, j)
                || *self.work.get(j, r + 1) != unit(j, r + 1)
            {
                return Err(Error::InternalCheckFailed(format!(
                    "pair {} not split off after reduction",
                    p0 + 1
                )));
            }
        }
        Ok(())
    }
}

pub fn decompose(u: &IntMatrix, genus: usize) -> Result<GeneratorWord> {
    decompose_traced(u, genus, &mut |_, _, _| {})
}

/// Like [`decompose`], calling `trace` with every intermediate matrix.
pub fn decompose_traced(
    u: &IntMatrix,
    genus: usize,
    trace: &mut dyn FnMut(Side, Letter, &IntMatrix),
) -> Result<GeneratorWord> {
    let form = SymplecticForm::new(genus);
    if !is_symplectic(u, &form)? {
        return Err(Error::NotSymplectic);
    }
    let mut red = Reducer {
        work: u.clone(),
        form,
        lefts: Vec::new(),
        rights: Vec::new(),
        trace,
    };
    for p0 in 0..genus {
        red.clear_column(p0)?;
        red.clear_row(p0)?;
    }
    if !red.work.is_identity() {
        return Err(Error::InternalCheckFailed(
            "reduction did not reach the identity".into(),
        ));
    }
    // lefts applied as l_m ... l_1 u r_1 ... r_n = 1
    let mut letters: Vec<Letter> = red.lefts.iter().map(|l| l.inverse()).collect();
    letters.extend(red.rights.iter().rev().map(|l| l.inverse()));
    let word = GeneratorWord {
        genus,
        letters: free_reduce(letters),
    };
    if compose(&word) != *u {
        return Err(Error::InternalCheckFailed(
            "decomposition does not recompose".into(),
        ));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_matrices() {
        assert_eq!(
            generator_matrix(Letter::a(1, 1), 2).unwrap(),
            IntMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(
            generator_matrix(Letter::c(1, 1), 2).unwrap(),
            IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 1], &[-1, 0, 1, 0], &[0, 0, 0, 1]])
        );
        let c = generator_matrix(Letter::c(1, 1), 2).unwrap();
        let ci = generator_matrix(Letter::c(1, -1), 2).unwrap();
        assert!((&c * &ci).is_identity());
        assert_eq!(generator_matrix(Letter::c(2, 1), 2).unwrap_err().kind(), "BadIndex");
        assert_eq!(generator_matrix(Letter::a(0, 1), 2).unwrap_err().kind(), "BadIndex");
    }

    #[test]
    fn generators_are_symplectic() {
        for g in 1..=4 {
            let form = SymplecticForm::new(g);
            for k in 1..=g {
                for gen in [Gen::A, Gen::B, Gen::C] {
                    if gen == Gen::C && k == g {
                        continue;
                    }
                    for exp in [1, -1] {
                        let m = generator_matrix(Letter::new(gen, k, exp), g).unwrap();
                        assert!(is_symplectic(&m, &form).unwrap(), "{gen:?}{k}^{exp} g={g}");
                    }
                }
            }
        }
        let bad = IntMatrix::from_i64(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!is_symplectic(&bad, &SymplecticForm::new(2)).unwrap());
        assert_eq!(
            is_symplectic(&bad, &SymplecticForm::new(1)).unwrap_err().kind(),
            "SizeMismatch"
        );
    }

    #[test]
    fn commutation_relations() {
        let w = |s: &str| compose(&GeneratorWord::parse(2, s).unwrap());
        assert!(compose(&GeneratorWord::identity(2)).is_identity());
        assert!(w("A1 A1^-1").is_identity());
        assert_eq!(w("B1 A2"), w("A2 B1"));
        assert_eq!(w("A1 B2"), w("B2 A1"));
        assert_eq!(w("C1 B1"), w("B1 C1"));
        assert_eq!(w("C1 A2"), w("A2 C1"));
    }

    #[test]
    fn fixed_words_act_as_documented() {
        let mut rot = IntMatrix::identity(4);
        rot.set(0, 0, Int::zero());
        rot.set(0, 1, Int::from(1));
        rot.set(1, 0, Int::from(-1));
        rot.set(1, 1, Int::zero());
        assert_eq!(compose(&GeneratorWord::new(2, rotation_word(1)).unwrap()), rot);
        let cross = IntMatrix::from_i64(&[&[1, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 1]]);
        assert_eq!(compose(&GeneratorWord::new(2, cross_word(1, 1)).unwrap()), cross);
    }

    #[test]
    fn word_text_round_trip() {
        let w = GeneratorWord::parse(2, "A1 B2^-1 C1").unwrap();
        assert_eq!(w.to_string(), "A1 B2^-1 C1");
        assert_eq!(GeneratorWord::parse(1, "C1").unwrap_err().kind(), "BadIndex");
        assert_eq!(GeneratorWord::parse(1, "D1").unwrap_err().kind(), "Parse");
    }

    #[test]
    fn decompose_identity_and_generators() {
        assert!(decompose(&IntMatrix::identity(4), 2).unwrap().is_empty());
        for l in [Letter::a(1, 1), Letter::b(2, -1), Letter::c(1, 1), Letter::c(1, -1)] {
            let m = generator_matrix(l, 2).unwrap();
            assert_eq!(compose(&decompose(&m, 2).unwrap()), m);
        }
        let not = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(decompose(&not, 1).unwrap_err().kind(), "NotSymplectic");
    }

    fn word_from_codes(g: usize, codes: &[(u8, u8, bool)]) -> GeneratorWord {
        let letters = codes
            .iter()
            .map(|&(t, k, pos)| {
                let kinds = if g > 1 { 3 } else { 2 };
                let gen = [Gen::A, Gen::B, Gen::C][t as usize % kinds];
                let top = if gen == Gen::C { g - 1 } else { g };
                Letter::new(gen, 1 + k as usize % top, if pos { 1 } else { -1 })
            })
            .collect();
        GeneratorWord::new(g, letters).unwrap()
    }

    proptest! {
        #[test]
        fn decompose_round_trips(
            g in 1usize..=3,
            codes in prop::collection::vec((any::<u8>(), any::<u8>(), any::<bool>()), 0..25),
        ) {
            let u = compose(&word_from_codes(g, &codes));
            let w = decompose(&u, g).unwrap();
            prop_assert_eq!(compose(&w), u);
        }
    }
}
