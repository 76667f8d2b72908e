//! Seeded random field elements, models and coordinate changes.
#![allow(dead_code)]

use kodaira::dvr::{EisElem, Field, FieldDescriptor, FpPoly, LocalElement, RatFunc};
use kodaira::tate::{run_tate, LocalData};
use kodaira::weierstrass::{CoordinateChange, WeierstrassModel};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(desc: &str) -> Field {
    Field::parse(desc).unwrap()
}

fn small_int(rng: &mut impl Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn coprime_to(rng: &mut impl Rng, p: u64, bound: i64) -> i64 {
    loop {
        let d = rng.gen_range(1..=bound);
        if !(d as u64).is_multiple_of(p) {
            return d;
        }
    }
}

fn random_fp_poly(rng: &mut impl Rng, q: u64, max_deg: usize) -> FpPoly {
    let deg = rng.gen_range(0..=max_deg);
    FpPoly::new((0..=deg).map(|_| rng.gen_range(0..q)).collect(), q)
}

/// An element of the valuation ring (or arbitrary, if `integral` is false).
pub fn element(f: &Field, rng: &mut impl Rng, integral: bool) -> LocalElement {
    let x = match f.descriptor() {
        FieldDescriptor::RationalAtP { p } => {
            let bound = (*p as i64).pow(3) * 4;
            let n = f.from_i64(small_int(rng, bound));
            if rng.gen_bool(0.2) {
                n.try_div(&f.from_i64(coprime_to(rng, *p, 30))).unwrap()
            } else {
                n
            }
        }
        FieldDescriptor::FunctionField { q } => {
            let num = random_fp_poly(rng, *q, 5);
            if rng.gen_bool(0.2) {
                let mut den: Vec<u64> = (0..3).map(|_| rng.gen_range(0..*q)).collect();
                den[0] = rng.gen_range(1..*q);
                f.from_ratfunc(RatFunc::new(num, FpPoly::new(den, *q)))
            } else {
                f.from_ratfunc(RatFunc::from_poly(num))
            }
        }
        FieldDescriptor::Eisenstein { p, poly } => {
            let deg = poly.len() - 1;
            let bound = (*p as i64).pow(2) * 3;
            let nums = (0..deg).map(|_| BigInt::from(small_int(rng, bound))).collect();
            let den = BigInt::from(if rng.gen_bool(0.2) { coprime_to(rng, *p, 10) } else { 1 });
            f.from_eis(EisElem::from_parts(nums, den))
        }
    };
    if integral {
        x
    } else {
        x.mul_pi_pow(rng.gen_range(-2..=2))
    }
}

pub fn unit(f: &Field, rng: &mut impl Rng) -> LocalElement {
    loop {
        let x = element(f, rng, true);
        if x.valuation().finite() == Some(0) {
            return x;
        }
    }
}

pub fn nonzero(f: &Field, rng: &mut impl Rng, integral: bool) -> LocalElement {
    loop {
        let x = element(f, rng, integral);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A nonsingular model with arbitrary coefficients.
pub fn model(f: &Field, rng: &mut impl Rng, integral: bool) -> WeierstrassModel {
    loop {
        let coeffs = std::array::from_fn(|_| {
            if rng.gen_bool(0.15) {
                f.zero()
            } else {
                element(f, rng, integral)
            }
        });
        let m = WeierstrassModel::new(coeffs).unwrap();
        if !m.is_singular() {
            return m;
        }
    }
}

/// `u` a unit times `pi^k` for `k` in `[-k_max, k_max]`; `r, s, t` arbitrary.
pub fn change(f: &Field, rng: &mut impl Rng, k_max: i64, integral: bool) -> CoordinateChange {
    let u = unit(f, rng).mul_pi_pow(rng.gen_range(-k_max..=k_max));
    let mut part = || if rng.gen_bool(0.2) { f.zero() } else { element(f, rng, integral) };
    let (r, s, t) = (part(), part(), part());
    CoordinateChange::new(u, r, s, t).unwrap()
}

/// Models built around each table weight, then moved by a random
/// integral change and sometimes made non-minimal. Most have additive
/// reduction.
pub fn additive_candidate(f: &Field, rng: &mut impl Rng) -> WeierstrassModel {
    const INDICES: [i64; 5] = [1, 2, 3, 4, 6];
    let pi = |x: LocalElement, k: i64| x.mul_pi_pow(k);
    let coeffs: [LocalElement; 5] = if rng.gen_bool(0.35) {
        // a2 exactly divisible by pi, a4 and a6 deep
        let n = rng.gen_range(0..8i64);
        let mut c = INDICES.map(|i| {
            let floor = (i + (i - 1) / 2 * n + 1) / 2;
            if rng.gen_bool(0.2) {
                f.zero()
            } else {
                pi(element(f, rng, true), floor + rng.gen_range(0..2))
            }
        });
        c[1] = pi(unit(f, rng), 1);
        c
    } else {
        let k = [2i64, 3, 4, 6, 8, 9, 10][rng.gen_range(0..7)];
        INDICES.map(|i| {
            if rng.gen_bool(0.15) {
                f.zero()
            } else {
                let floor = (i * k + 11) / 12;
                pi(element(f, rng, true), floor + i64::from(rng.gen_bool(0.25)))
            }
        })
    };
    let m = WeierstrassModel::new(coeffs).unwrap();
    let mut moved = m.transform(&change(f, rng, 0, true)).unwrap();
    if rng.gen_bool(0.15) {
        moved = moved.rescale_by_pi(-1);
    }
    moved
}

/// `count` nonsingular models with additive reduction, with their Tate data.
pub fn additive_curves(f: &Field, seed: u64, count: usize) -> Vec<(WeierstrassModel, LocalData)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(tries < 50 * count, "generator stalled over {f}");
        let m = additive_candidate(f, &mut rng);
        if m.is_singular() {
            continue;
        }
        let ld = run_tate(&m).unwrap();
        if ld.kodaira.is_additive() {
            out.push((m, ld));
        }
    }
    out
}

/// Curves with multiplicative reduction: `a1` a unit, the rest deep.
pub fn multiplicative_candidate(f: &Field, rng: &mut impl Rng) -> WeierstrassModel {
    let a1 = unit(f, rng);
    let rest: [LocalElement; 4] =
        std::array::from_fn(|_| element(f, rng, true).mul_pi_pow(rng.gen_range(1..5)));
    let [a2, a3, a4, a6] = rest;
    let m = WeierstrassModel::new([a1, a2, a3, a4, a6]).unwrap();
    m.transform(&change(f, rng, 0, true)).unwrap()
}

/// Disc of `x^3 + a2 x^2 + a4 x + a6`, from the textbook formula.
pub fn cubic_disc(m: &WeierstrassModel) -> LocalElement {
    let f = m.field();
    let c = |n: i64| f.from_i64(n);
    let (a2, a4, a6) = (&m.a2, &m.a4, &m.a6);
    a2 * a2 * a4 * a4 - c(4) * a4 * a4 * a4 - c(4) * a2 * a2 * a2 * a6 - c(27) * a6 * a6
        + c(18) * a2 * a4 * a6
}
