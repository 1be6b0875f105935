//! Seeded generators for test data: incommensurable caravans and random walks
//! of legal moves away from them.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::caravan::standard_caravan;
use crate::diagram::{ArcDiagram, End};
use crate::error::Result;
use crate::layout::{combinatorially_legal, vasiliev_with_shifts};
use crate::moves::{apply_move, legal_vasiliev_moves, Move};
use crate::rational::{Int, Rational};

fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi)
        .filter(|&n| n > 1 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0))
        .collect()
}

/// `n` positive lengths `a_i / q_i` with distinct primes `q_i` not dividing
/// `a_i`. An integer relation among them needs a coefficient divisible by
/// some `q_i`, so small relations cannot occur.
pub fn incommensurable_lengths<R: Rng>(n: usize, rng: &mut R) -> Vec<Rational> {
    let primes = primes_between(1000, 4000);
    primes
        .choose_multiple(rng, n)
        .map(|&q| {
            let mut a = rng.gen_range(q..8 * q);
            if a % q == 0 {
                a += 1;
            }
            Rational::new(Int::from(a), Int::from(q))
        })
        .collect()
}

/// Canonical caravan of genus `g` with random incommensurable periods and the
/// standard lattice.
pub fn random_caravan<R: Rng>(g: usize, rng: &mut R) -> ArcDiagram {
    standard_caravan(&incommensurable_lengths(2 * g, rng)).expect("positive lengths")
}

/// A random legal shift of one arc, or `None` if the chosen arc cannot move in
/// the chosen direction.
pub fn random_shift<R: Rng>(d: &ArcDiagram, rng: &mut R) -> Option<Move> {
    let a = d.arcs().choose(rng)?;
    let right = rng.gen_bool(0.5);
    let mut room: Option<Rational> = None;
    for b in d.arcs().iter().filter(|b| b.id != a.id) {
        for y in [&b.left, &b.right] {
            for x in [&a.left, &a.right] {
                let gap = if right { y - x } else { x - y };
                if gap > Rational::zero() && room.as_ref().is_none_or(|r| &gap < r) {
                    room = Some(gap);
                }
            }
        }
    }
    let room = room.unwrap_or_else(|| Rational::from_integer(Int::from(1)));
    let frac = Rational::new(Int::from(rng.gen_range(1..8)), Int::from(8));
    let delta = room * frac;
    Some(Move::shift(a.id, if right { delta } else { -delta }))
}

/// Takes `steps` random legal steps from `d`. Each step is a Vasiliev move,
/// possibly preceded by the shifts that make it legal, or a single shift.
/// Returns the final diagram and the full move list.
pub fn scramble<R: Rng>(d: &ArcDiagram, steps: usize, rng: &mut R) -> Result<(ArcDiagram, Vec<Move>)> {
    let mut cur = d.clone();
    let mut out = Vec::new();
    let n = d.arcs().len();
    for _ in 0..steps {
        if rng.gen_bool(0.2) {
            if let Some(m) = random_shift(&cur, rng) {
                if let Ok((next, _)) = apply_move(&cur, &m) {
                    cur = next;
                    out.push(m);
                }
            }
            continue;
        }
        let mut cands = legal_vasiliev_moves(&cur);
        for moved in 1..=n {
            for end in [End::Left, End::Right] {
                for fixed in (1..=n).filter(|&f| f != moved) {
                    for fe in [End::Left, End::Right] {
                        let m = Move::vasiliev(moved, end, fixed, fe);
                        if !cands.contains(&m) && combinatorially_legal(&cur, moved, end, fixed, fe) {
                            cands.push(m);
                        }
                    }
                }
            }
        }
        cands.shuffle(rng);
        for m in cands {
            if let Ok((next, moves)) = vasiliev_with_shifts(&cur, &m) {
                cur = next;
                out.extend(moves);
                break;
            }
        }
    }
    Ok((cur, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caravan::is_caravan;
    use crate::diagram::{is_admissible, same_up_to_translation};
    use crate::moves::apply_sequence;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lengths_use_distinct_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xs = incommensurable_lengths(6, &mut rng);
        let mut dens: Vec<Int> = xs.iter().map(|x| x.denom().clone()).collect();
        dens.sort();
        dens.dedup();
        assert_eq!(dens.len(), 6);
        assert!(dens.iter().all(|q| q > &Int::from(1000)));
    }

    #[test]
    fn scrambles_replay() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in 1..=3 {
            let c = random_caravan(g, &mut rng);
            assert!(is_caravan(&c));
            let (d, moves) = scramble(&c, 10, &mut rng).unwrap();
            assert!(is_admissible(&d));
            let (r, p) = apply_sequence(&c, &moves).unwrap();
            assert!(same_up_to_translation(&r, &d));
            assert!(p.is_unimodular());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let c = random_caravan(2, &mut rng);
            scramble(&c, 8, &mut rng).unwrap()
        };
        assert_eq!(run(), run());
    }
}
