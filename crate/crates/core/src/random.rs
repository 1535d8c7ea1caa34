//! Seeded random elements for spot checks and property tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ring::{int, LaurentPoly, Monomial, Ring};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random monomial with `sum |e_i| <= max_deg`; negative exponents only on
/// invertible generators.
pub fn monomial(ring: &Ring, rng: &mut Rng64, max_deg: u32) -> Monomial {
    let n = ring.len();
    let mut e = vec![0i32; n];
    if n == 0 {
        return Monomial(e);
    }
    let deg = rng.gen_range(0..=max_deg);
    for _ in 0..deg {
        let i = rng.gen_range(0..n);
        let step = if ring.is_invertible(i) && rng.gen_bool(0.5) { -1 } else { 1 };
        if e[i] != 0 && e[i].signum() != step {
            continue;
        }
        e[i] += step;
    }
    Monomial(e)
}

/// Random polynomial with up to `max_terms` terms and small integer coefficients.
pub fn poly(ring: &Ring, rng: &mut Rng64, max_deg: u32, max_terms: usize) -> LaurentPoly {
    let k = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Monomial, _)> = (0..k)
        .map(|_| {
            let m = monomial(ring, rng, max_deg);
            let mut c = rng.gen_range(-3i64..=3);
            if c == 0 {
                c = 1;
            }
            (m, int(c))
        })
        .collect();
    LaurentPoly::from_terms(ring, terms).expect("admissible random monomials")
}
