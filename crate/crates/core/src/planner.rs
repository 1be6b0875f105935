//! Explicit paths between caravans with the same polarized period lattice.
//!
//! A change of basis `M` between the lattices of two caravans is written as a
//! word in the generators `A_k`, `B_k`, `C_k`, and the letters are realized one
//! at a time by Vasiliev moves. Arc lengths must stay positive, so the planner
//! keeps a caravan whose lattice agrees with the exact product of the letters
//! applied so far only up to a rotation `(x, y) -> (-y, x)` inside each pair;
//! these rotations are tracked and all vanish once the whole word is applied.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::caravan::is_caravan;
use crate::diagram::{same_up_to_translation, ArcDiagram, End};
use crate::error::{Error, Result};
use crate::layout::{relayout, vasiliev_within};
use crate::matrix::IntMatrix;
use crate::moves::{apply_sequence, Move};
use crate::rational::{serde_rational, Int, Rational};
use crate::symplectic::{decompose, generator_matrix, is_symplectic, Gen, GeneratorWord, Letter, SymplecticForm};

/// A period tuple up to the rotations `(x, y) -> (-y, x)` of each pair.
///
/// `rotations[k]` is the number of quarter turns taking the pair of the
/// representative to the pair of the original tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignClass {
    pub genus: usize,
    #[serde(with = "serde_rational::vec")]
    pub representative: Vec<Rational>,
    pub rotations: Vec<u8>,
}

impl SignClass {
    /// Block-diagonal matrix of the rotations: it maps the representative to
    /// the original tuple.
    pub fn normalization(&self) -> IntMatrix {
        let mut q = IntMatrix::zeros(2 * self.genus);
        for (k, &j) in self.rotations.iter().enumerate() {
            let r = rotation(j);
            for a in 0..2 {
                for b in 0..2 {
                    q.set(2 * k + a, 2 * k + b, Int::from(r[a][b]));
                }
            }
        }
        q
    }
}

/// `R^j` with `R = [[0, -1], [1, 0]]`.
fn rotation(j: u8) -> [[i64; 2]; 2] {
    match j % 4 {
        0 => [[1, 0], [0, 1]],
        1 => [[0, -1], [1, 0]],
        2 => [[-1, 0], [0, -1]],
        _ => [[0, 1], [-1, 0]],
    }
}

fn rotate(j: u8, x: &Rational, y: &Rational) -> (Rational, Rational) {
    match j % 4 {
        0 => (x.clone(), y.clone()),
        1 => (-y, x.clone()),
        2 => (-x, -y),
        _ => (y.clone(), -x),
    }
}

pub fn normalize_class(t: &[Rational]) -> Result<SignClass> {
    if t.is_empty() || !t.len().is_multiple_of(2) {
        return Err(Error::SizeMismatch(format!(
            "a period tuple has an even, positive length, got {}",
            t.len()
        )));
    }
    if t.iter().any(Zero::is_zero) {
        return Err(Error::ZeroEntry);
    }
    let mut representative = Vec::with_capacity(t.len());
    let mut rotations = Vec::with_capacity(t.len() / 2);
    for pair in t.chunks(2) {
        let j = (0..4u8)
            .find(|&j| {
                let (x, y) = rotate(4 - j, &pair[0], &pair[1]);
                x.is_positive() && y.is_positive()
            })
            .expect("one quarter turn makes a nonzero pair positive");
        let (x, y) = rotate(4 - j, &pair[0], &pair[1]);
        representative.extend([x, y]);
        rotations.push(j);
    }
    Ok(SignClass {
        genus: t.len() / 2,
        representative,
        rotations,
    })
}

/// The moves realizing `C` on four consecutive arcs `a, b, c, d` of a caravan
/// whose lengths satisfy `z > x`. Each entry is `(moved, end, fixed,
/// fixed_end)` with arcs numbered `0..4` in left order. The net effect is
/// `b += d`, `c -= a`.
pub const CORE_SCRIPT: [(usize, End, usize, End); 7] = [
    (2, End::Left, 1, End::Right),
    (2, End::Left, 0, End::Left),
    (2, End::Left, 1, End::Left),
    (2, End::Right, 3, End::Left),
    (1, End::Right, 2, End::Left),
    (2, End::Right, 3, End::Right),
    (1, End::Right, 2, End::Right),
];

/// The script realizing `C^-1` (`b -= d`, `c += a`), valid when `y > t`:
/// the core script backwards, each move undone.
pub fn inverse_core_script() -> Vec<(usize, End, usize, End)> {
    CORE_SCRIPT
        .iter()
        .rev()
        .map(|&(m, e, f, fe)| (m, e, f, fe.flip()))
        .collect()
}

/// A caravan together with the rotations relating it to the lattice the
/// applied letters prescribe.
#[derive(Debug, Clone)]
pub struct Planner {
    diagram: ArcDiagram,
    rotations: Vec<u8>,
    moves: Vec<Move>,
}

impl Planner {
    pub fn new(d: &ArcDiagram) -> Result<Planner> {
        if !is_caravan(d) {
            return Err(Error::NotACaravan);
        }
        Ok(Planner {
            diagram: d.clone(),
            rotations: vec![0; d.genus()],
            moves: Vec::new(),
        })
    }

    pub fn diagram(&self) -> &ArcDiagram {
        &self.diagram
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn into_parts(self) -> (ArcDiagram, Vec<Move>) {
        (self.diagram, self.moves)
    }

    /// Lattice rows in left order, with the tracked rotations applied.
    pub fn virtual_lattice(&self) -> IntMatrix {
        let q = SignClass {
            genus: self.diagram.genus(),
            representative: Vec::new(),
            rotations: self.rotations.clone(),
        }
        .normalization();
        &q * &self.diagram.lattice_by_left()
    }

    /// Arc lengths in left order, with the tracked rotations applied.
    pub fn virtual_lengths(&self) -> Vec<Rational> {
        let actual = self.lengths();
        let mut out = Vec::with_capacity(actual.len());
        for (k, pair) in actual.chunks(2).enumerate() {
            let (x, y) = rotate(self.rotations[k], &pair[0], &pair[1]);
            out.extend([x, y]);
        }
        out
    }

    fn lengths(&self) -> Vec<Rational> {
        self.diagram
            .left_order()
            .into_iter()
            .map(|id| self.diagram.arc(id).length())
            .collect()
    }

    /// Arc ids of pair `k` (1-based) in left order.
    fn pair(&self, k: usize) -> (usize, usize) {
        let ids = self.diagram.left_order();
        (ids[2 * k - 2], ids[2 * k - 1])
    }

    fn vasiliev(&mut self, m: Move, window: &[usize]) -> Result<()> {
        let (out, moves) = vasiliev_within(&self.diagram, &m, window)?;
        self.diagram = out;
        self.moves.extend(moves);
        Ok(())
    }

    /// Applies one letter to the tracked lattice.
    pub fn apply(&mut self, l: Letter) -> Result<()> {
        let g = self.diagram.genus();
        let expected = &generator_matrix(l, g)? * &self.virtual_lattice();
        match l.gen {
            Gen::A | Gen::B => self.pair_letter(l)?,
            Gen::C => self.c_letter(l.index, l.exp)?,
        }
        if !is_caravan(&self.diagram) || self.virtual_lattice() != expected {
            return Err(Error::InternalCheckFailed(format!(
                "letter {l} did not produce the expected lattice"
            )));
        }
        Ok(())
    }

    fn pair_letter(&mut self, l: Letter) -> Result<()> {
        let k = l.index;
        // conjugating by a quarter turn swaps the two transvections
        let (gen, exp) = if self.rotations[k - 1].is_multiple_of(2) {
            (l.gen, l.exp)
        } else {
            match l.gen {
                Gen::A => (Gen::B, -l.exp),
                _ => (Gen::A, -l.exp),
            }
        };
        let turn = self.actual_pair_letter(k, gen, exp)?;
        self.rotations[k - 1] = ((self.rotations[k - 1] as i32 + turn).rem_euclid(4)) as u8;
        Ok(())
    }

    /// Realizes `gen^exp` on the actual lengths of pair `k`. When the result
    /// would have a negative length the pair is taken to its positive
    /// representative instead, and the quarter turns separating the two are
    /// returned.
    fn actual_pair_letter(&mut self, k: usize, gen: Gen, exp: i32) -> Result<i32> {
        let (a, b) = self.pair(k);
        let window = [a, b];
        let x = self.diagram.arc(a).length();
        let y = self.diagram.arc(b).length();
        let alpha = |fe| Move::vasiliev(a, End::Right, b, fe);
        let beta = |fe| Move::vasiliev(b, End::Left, a, fe);
        if exp < 0 && x == y {
            return Err(Error::DegenerateResult(format!(
                "pair {k} has equal lengths {x}"
            )));
        }
        match (gen, exp > 0) {
            (Gen::A, true) => self.vasiliev(alpha(End::Left), &window).map(|_| 0),
            (Gen::B, true) => self.vasiliev(beta(End::Right), &window).map(|_| 0),
            (Gen::A, false) if x > y => self.vasiliev(alpha(End::Right), &window).map(|_| 0),
            (Gen::A, false) => {
                // (x, y) -> (x, y - x) -> (y, y - x)
                self.vasiliev(beta(End::Left), &window)?;
                self.vasiliev(alpha(End::Left), &window)?;
                Ok(1)
            }
            (Gen::B, false) if y > x => self.vasiliev(beta(End::Left), &window).map(|_| 0),
            (Gen::B, false) => {
                // (x, y) -> (x - y, y) -> (x - y, x)
                self.vasiliev(alpha(End::Right), &window)?;
                self.vasiliev(beta(End::Right), &window)?;
                Ok(-1)
            }
            (Gen::C, _) => unreachable!("pair letters only"),
        }
    }

    fn c_letter(&mut self, k: usize, exp: i32) -> Result<()> {
        let v = self.virtual_lengths();
        let p = 2 * (k - 1);
        let (cx, cy, cz, ct) = (&v[p], &v[p + 1], &v[p + 2], &v[p + 3]);
        let e = Rational::from_integer(Int::from(exp));
        let target = [cx.clone(), cy + &e * ct, cz - &e * cx, ct.clone()];
        if target.iter().any(Zero::is_zero) {
            return Err(Error::ZeroEntryInTarget);
        }
        // Flip whole pairs so that x, t > 0; C changes only by its sign.
        let s1 = if cx.is_positive() { 1 } else { -1 };
        let s2 = if ct.is_positive() { 1 } else { -1 };
        let exp = exp * s1 * s2;
        let x = cx.abs();
        let t = ct.abs();
        let y = cy * Rational::from_integer(Int::from(s1));
        let z = cz * Rational::from_integer(Int::from(s2));
        let (ylo, zlo) = if exp > 0 {
            (Rational::zero(), x.clone())
        } else {
            (t.clone(), Rational::zero())
        };
        let n1 = steps_above(&y, &x, &ylo);
        let n2 = steps_above(&z, &t, &zlo);
        for _ in 0..n1 {
            self.pair_letter(Letter::b(k, 1))?;
        }
        for _ in 0..n2 {
            self.pair_letter(Letter::a(k + 1, 1))?;
        }
        let want = |s: i32| if s > 0 { 0 } else { 2 };
        if self.rotations[k - 1] != want(s1) || self.rotations[k] != want(s2) {
            return Err(Error::InternalCheckFailed(format!(
                "pairs {k} and {} are not positive before C",
                k + 1
            )));
        }
        self.core(k, exp)?;
        for _ in 0..n1 {
            self.pair_letter(Letter::b(k, -1))?;
        }
        for _ in 0..n2 {
            self.pair_letter(Letter::a(k + 1, -1))?;
        }
        Ok(())
    }

    /// Runs the core script or its inverse on pairs `k`, `k + 1` of the actual
    /// caravan.
    fn core(&mut self, k: usize, exp: i32) -> Result<()> {
        let (a, b) = self.pair(k);
        let (c, d) = self.pair(k + 1);
        let ids = [a, b, c, d];
        let script = if exp > 0 {
            CORE_SCRIPT.to_vec()
        } else {
            inverse_core_script()
        };
        for (m, e, f, fe) in script {
            self.vasiliev(Move::vasiliev(ids[m], e, ids[f], fe), &ids)?;
        }
        Ok(())
    }
}

/// Least `n >= 0` with `y + n * x > lo`, for `x > 0`.
fn steps_above(y: &Rational, x: &Rational, lo: &Rational) -> usize {
    if y > lo {
        return 0;
    }
    let n = ((lo - y) / x).floor() + Rational::one();
    n.to_integer().try_into().expect("conditioning count fits in usize")
}

/// Realizes `A_k^exp` on a caravan. The result is the caravan of the positive
/// representative of the transformed period vector.
pub fn realize_a(d: &ArcDiagram, k: usize, exp: i32) -> Result<(ArcDiagram, Vec<Move>)> {
    realize(d, Letter::a(k, exp))
}

/// Realizes `B_k^exp` on a caravan.
pub fn realize_b(d: &ArcDiagram, k: usize, exp: i32) -> Result<(ArcDiagram, Vec<Move>)> {
    realize(d, Letter::b(k, exp))
}

/// Realizes `C_k^exp` on a caravan: lengths `(x, y, z, t)` of pairs `k`,
/// `k + 1` go to the class of `(x, y + t, z - x, t)` (or `(x, y - t, z + x,
/// t)`).
pub fn realize_c(d: &ArcDiagram, k: usize, exp: i32) -> Result<(ArcDiagram, Vec<Move>)> {
    realize(d, Letter::c(k, exp))
}

fn realize(d: &ArcDiagram, l: Letter) -> Result<(ArcDiagram, Vec<Move>)> {
    let mut p = Planner::new(d)?;
    generator_matrix(l, d.genus())?;
    p.apply(l)?;
    Ok(p.into_parts())
}

/// The result of planning a path between two caravans.
#[derive(Debug, Clone)]
pub struct Plan {
    /// Change of basis: lattice rows of the target (left order) are `M` times
    /// those of the source.
    pub matrix: IntMatrix,
    pub word: GeneratorWord,
    pub moves: Vec<Move>,
    /// The source after all moves: the target, up to arc ids.
    pub result: ArcDiagram,
}

/// Change of basis between the lattices of two caravans, checked to be an
/// integral symplectic matrix.
pub fn change_of_basis(d1: &ArcDiagram, d2: &ArcDiagram) -> Result<IntMatrix> {
    for d in [d1, d2] {
        if !is_caravan(d) {
            return Err(Error::NotACaravan);
        }
    }
    if d1.genus() != d2.genus() || d1.basis() != d2.basis() {
        return Err(Error::NotIsoperiodic(
            "the diagrams are not described in the same basis".into(),
        ));
    }
    let l1 = d1.lattice_by_left();
    let l2 = d2.lattice_by_left();
    let (Some(i1), Some(i2)) = (l1.integer_inverse(), l2.integer_inverse()) else {
        return Err(Error::NotIsoperiodic(
            "arc lengths do not form a basis of the lattice".into(),
        ));
    };
    let m = &l2 * &i1;
    if !(&l1 * &i2).is_unimodular() || !m.is_unimodular() {
        return Err(Error::NotIsoperiodic(
            "the period lattices differ".into(),
        ));
    }
    if !is_symplectic(&m, &SymplecticForm::new(d1.genus()))? {
        return Err(Error::NotSamePolarization);
    }
    Ok(m)
}

/// Plans a legal move sequence taking caravan `d1` onto caravan `d2`, arcs
/// matched by left order.
pub fn plan(d1: &ArcDiagram, d2: &ArcDiagram) -> Result<Plan> {
    let m = change_of_basis(d1, d2)?;
    let word = decompose(&m, d1.genus())?;
    let mut planner = Planner::new(d1)?;
    for &l in word.letters.iter().rev() {
        planner.apply(l)?;
    }
    if planner.rotations.iter().any(|&j| j != 0) {
        return Err(Error::InternalCheckFailed(
            "rotations remain after the last letter".into(),
        ));
    }
    let (cur, mut moves) = planner.into_parts();
    let (result, tail) = relayout(&cur, &aligned_lefts(&cur, d2))?;
    moves.extend(tail);
    let (replayed, _) = apply_sequence(d1, &moves)?;
    if replayed != result || !same_up_to_translation(&result, d2) {
        return Err(Error::InternalCheckFailed(
            "planned moves do not reach the target".into(),
        ));
    }
    Ok(Plan {
        matrix: m,
        word,
        moves,
        result,
    })
}

pub fn connect(d1: &ArcDiagram, d2: &ArcDiagram) -> Result<Vec<Move>> {
    plan(d1, d2).map(|p| p.moves)
}

/// Left endpoints (by id of `cur`) of the arcs of `target`, matched by left
/// order.
fn aligned_lefts(cur: &ArcDiagram, target: &ArcDiagram) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cur.arcs().len()];
    for (c, t) in cur.left_order().into_iter().zip(target.left_order()) {
        out[c - 1] = target.arc(t).left.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caravan::{caravan_from_periods, period_vector, standard_caravan, PeriodVector};
    use crate::diagram::translate;
    use crate::rational::{int, rat};
    use crate::symplectic::compose;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn periods(d: &ArcDiagram) -> Vec<Rational> {
        period_vector(d).unwrap().lengths
    }

    #[test]
    fn normalizes_classes() {
        let c = normalize_class(&ints(&[3, 5])).unwrap();
        assert_eq!(c.representative, ints(&[3, 5]));
        assert_eq!(normalize_class(&ints(&[-5, 3])).unwrap().representative, ints(&[3, 5]));
        let c = normalize_class(&ints(&[2, -7, -1, -4])).unwrap();
        assert_eq!(c.representative, ints(&[7, 2, 1, 4]));
        let back = c.normalization().apply(&c.representative);
        assert_eq!(back, ints(&[2, -7, -1, -4]));
        assert_eq!(normalize_class(&ints(&[1, 0])).unwrap_err().kind(), "ZeroEntry");
    }

    #[test]
    fn every_class_has_one_positive_member() {
        let base = ints(&[3, 5, 2, 7]);
        let mut reps = std::collections::HashSet::new();
        for j1 in 0..4u8 {
            for j2 in 0..4u8 {
                let (x, y) = rotate(j1, &base[0], &base[1]);
                let (z, t) = rotate(j2, &base[2], &base[3]);
                reps.insert((x.clone(), y.clone(), z.clone(), t.clone()));
                let c = normalize_class(&[x, y, z, t]).unwrap();
                assert_eq!(c.representative, base);
                assert_eq!(c.rotations, vec![j1, j2]);
            }
        }
        assert_eq!(reps.len(), 16);
    }

    #[test]
    fn transvections_on_one_pair() {
        let d = standard_caravan(&ints(&[2, 3])).unwrap();
        let (out, moves) = realize_a(&d, 1, 1).unwrap();
        assert_eq!(periods(&out), ints(&[5, 3]));
        assert_eq!(apply_sequence(&d, &moves).unwrap().0, out);
        let (out, _) = realize_a(&d, 1, -1).unwrap();
        assert_eq!(periods(&out), ints(&[3, 1]));
        let (out, _) = realize_b(&d, 1, 1).unwrap();
        assert_eq!(periods(&out), ints(&[2, 5]));
        let (out, _) = realize_b(&d, 1, -1).unwrap();
        assert_eq!(periods(&out), ints(&[2, 1]));
        let d = standard_caravan(&ints(&[3, 2])).unwrap();
        let (out, _) = realize_b(&d, 1, -1).unwrap();
        assert_eq!(periods(&out), ints(&[1, 3]));
        let d = standard_caravan(&ints(&[2, 2])).unwrap();
        assert_eq!(realize_a(&d, 1, -1).unwrap_err().kind(), "DegenerateResult");
    }

    #[test]
    fn transvection_is_local() {
        let d = standard_caravan(&ints(&[2, 3, 7, 11])).unwrap();
        let (out, _) = realize_a(&d, 2, 1).unwrap();
        assert_eq!(periods(&out), ints(&[2, 3, 18, 11]));
        for id in [1, 2] {
            assert_eq!(out.arc(id), d.arc(id));
        }
    }

    #[test]
    fn cross_letter() {
        let d = standard_caravan(&ints(&[2, 3, 7, 5])).unwrap();
        let (out, moves) = realize_c(&d, 1, 1).unwrap();
        assert_eq!(periods(&out), ints(&[2, 8, 5, 5]));
        assert_eq!(moves.iter().filter(|m| !m.is_shift()).count(), CORE_SCRIPT.len());
        let lengths = vec![int(2), int(9), int(3), rat(11, 2)];
        let d = standard_caravan(&lengths).unwrap();
        let (out, _) = realize_c(&d, 1, -1).unwrap();
        assert_eq!(periods(&out), vec![int(2), rat(7, 2), int(5), rat(11, 2)]);
        let d = standard_caravan(&ints(&[2, 3, 2, 5])).unwrap();
        assert_eq!(realize_c(&d, 1, 1).unwrap_err().kind(), "ZeroEntryInTarget");
    }

    #[test]
    fn cross_letter_with_conditioning() {
        // z < x: the core script alone does not apply
        let d = standard_caravan(&[rat(13, 3), rat(5, 7), rat(3, 11), rat(17, 5)]).unwrap();
        let (out, moves) = realize_c(&d, 1, 1).unwrap();
        let want = normalize_class(&[rat(13, 3), rat(5, 7) + rat(17, 5), rat(3, 11) - rat(13, 3), rat(17, 5)])
            .unwrap()
            .representative;
        assert_eq!(periods(&out), want);
        assert_eq!(apply_sequence(&d, &moves).unwrap().0, out);
    }

    #[test]
    fn cross_letter_between_later_pairs_is_local() {
        let d = standard_caravan(&[rat(7, 3), rat(5, 2), rat(2, 3), rat(9, 2), rat(23, 3), rat(11, 5)]).unwrap();
        let (out, _) = realize_c(&d, 2, 1).unwrap();
        assert_eq!(out.arc(1), d.arc(1));
        assert_eq!(out.arc(2), d.arc(2));
        let p = periods(&out);
        assert_eq!(p[..2], periods(&d)[..2]);
    }

    #[test]
    fn translate_needs_only_shifts() {
        let d1 = standard_caravan(&[rat(7, 3), rat(5, 2)]).unwrap();
        let d2 = translate(&d1, &int(7));
        let moves = connect(&d1, &d2).unwrap();
        assert!(!moves.is_empty());
        assert!(moves.iter().all(Move::is_shift));
    }

    fn random_word(g: usize, len: usize, rng: &mut ChaCha8Rng) -> GeneratorWord {
        let letters = (0..len)
            .map(|_| {
                let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
                match rng.gen_range(0..3) {
                    0 => Letter::a(rng.gen_range(1..=g), exp),
                    1 => Letter::b(rng.gen_range(1..=g), exp),
                    _ if g > 1 => Letter::c(rng.gen_range(1..g), exp),
                    _ => Letter::a(1, exp),
                }
            })
            .collect();
        GeneratorWord::new(g, letters).unwrap()
    }

    /// The caravan whose lattice is the positive normalization of `w` applied
    /// to the lattice of `d`.
    fn target(d: &ArcDiagram, w: &GeneratorWord) -> ArcDiagram {
        let v = &compose(w) * &d.lattice_by_left();
        let lengths = v.apply(d.basis());
        let class = normalize_class(&lengths).unwrap();
        let q = class.normalization().integer_inverse().unwrap();
        let p = PeriodVector::new(class.representative).unwrap();
        caravan_from_periods(&p, &(&q * &v).rows(), d.basis()).unwrap()
    }

    #[test]
    fn connects_random_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in 1..=2 {
            for _ in 0..4 {
                let d1 = crate::random::random_caravan(g, &mut rng);
                let w = random_word(g, 6, &mut rng);
                let d2 = target(&d1, &w);
                let plan = plan(&d1, &d2).unwrap();
                let (r, p) = apply_sequence(&d1, &plan.moves).unwrap();
                assert!(same_up_to_translation(&r, &d2));
                assert!(p.is_unimodular());
            }
        }
    }

    #[test]
    fn polarization_mismatch_is_detected() {
        let lengths = vec![rat(7, 3), rat(5, 2), rat(2, 3), rat(9, 2)];
        let d1 = standard_caravan(&lengths).unwrap();
        // same lattice, pairs (x, z) and (y, t) instead of (x, y) and (z, t)
        let swap = [0, 2, 1, 3];
        let p = PeriodVector::new(swap.iter().map(|&i| lengths[i].clone()).collect()).unwrap();
        let rows = swap
            .iter()
            .map(|&i| (0..4).map(|j| Int::from((i == j) as i64)).collect())
            .collect::<Vec<_>>();
        let d2 = caravan_from_periods(&p, &rows, &lengths).unwrap();
        assert_eq!(connect(&d1, &d2).unwrap_err().kind(), "NotSamePolarization");
        let other = standard_caravan(&ints(&[2, 3, 4, 5])).unwrap();
        assert_eq!(connect(&d1, &other).unwrap_err().kind(), "NotIsoperiodic");
    }
}
