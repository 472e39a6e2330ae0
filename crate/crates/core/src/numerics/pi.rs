use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::Float;

fn cache() -> &'static Mutex<HashMap<u32, Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// pi at `bits` of precision, by the Gauss-Legendre AGM iteration.
/// Cached per precision.
pub fn pi(bits: u32) -> Float {
    if let Some(v) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&bits) {
        return v.clone();
    }
    let value = gauss_legendre(bits);
    cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(bits)
        .or_insert(value)
        .clone()
}

fn gauss_legendre(bits: u32) -> Float {
    let work = bits + 16;
    let mut a = Float::with_val(work, 1);
    let mut b = Float::with_val(work, 2).sqrt().recip();
    let mut t = Float::with_val(work, 0.25);
    let mut p = Float::with_val(work, 1);
    let tiny = Float::with_val(work, Float::i_exp(1, -(work as i32)));
    loop {
        let a_next = Float::with_val(work, &a + &b) / 2u32;
        let b_next = Float::with_val(work, &a * &b).sqrt();
        let d = Float::with_val(work, &a - &a_next);
        let d2 = Float::with_val(work, &d * &d);
        t -= Float::with_val(work, &d2 * &p);
        p *= 2u32;
        a = a_next;
        b = b_next;
        // the next correction is of order d2^2
        if d2 < tiny {
            break;
        }
    }
    let s = Float::with_val(work, &a + &b);
    let num = Float::with_val(work, &s * &s);
    let den = Float::with_val(work, &t * 4u32);
    Float::with_val(bits, num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    #[test]
    fn agrees_with_mpfr_constant() {
        for bits in [64u32, 136, 200, 400] {
            let ours = pi(bits);
            let reference = Float::with_val(bits, Constant::Pi);
            let diff = Float::with_val(bits, &ours - &reference).abs();
            let bound = Float::with_val(bits, Float::i_exp(1, 3 - bits as i32));
            assert!(diff <= bound, "bits={bits} diff={diff}");
        }
    }

    #[test]
    fn concurrent_first_use() {
        let handles: Vec<_> = (0..8).map(|_| std::thread::spawn(|| pi(777))).collect();
        let values: Vec<Float> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }
}
