//! Radix-2 decimation-in-time FFT and a direct DFT to check it against.
//!
//! Forward transforms use `exp(-j 2 pi k n / N)`; inverse transforms use the
//! positive exponent and divide by `N`.

use std::f64::consts::TAU;

use num_complex::Complex64;

/// In-place forward FFT. Panics unless the length is a power of two.
pub fn fft(buf: &mut [Complex64]) {
    radix2(buf, false);
}

/// In-place inverse FFT, scaled by `1/N`. Panics unless the length is a
/// power of two.
pub fn ifft(buf: &mut [Complex64]) {
    radix2(buf, true);
    let scale = 1.0 / buf.len() as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
}

/// Direct O(N^2) transform, any length.
pub fn dft(input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let n = input.len();
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut out: Vec<Complex64> = (0..n)
        .map(|k| {
            input
                .iter()
                .enumerate()
                // reduce k*j mod n first so the angle stays small
                .map(|(j, &x)| x * Complex64::from_polar(1.0, sign * TAU * ((k * j) % n) as f64 / n as f64))
                .sum()
        })
        .collect();
    if inverse {
        let scale = 1.0 / n as f64;
        out.iter_mut().for_each(|z| *z *= scale);
    }
    out
}

/// FFT when the length allows it, direct transform otherwise.
pub fn transform(buf: &mut [Complex64], inverse: bool) {
    if buf.len().is_power_of_two() {
        if inverse {
            ifft(buf)
        } else {
            fft(buf)
        }
    } else {
        let out = dft(buf, inverse);
        buf.copy_from_slice(&out);
    }
}

fn radix2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    assert!(n.is_power_of_two(), "radix-2 FFT needs a power-of-two length, got {n}");
    if n < 2 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        // twiddles computed directly rather than by repeated multiplication
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::from_polar(1.0, sign * TAU * k as f64 / len as f64))
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let a = buf[start + k];
                let b = buf[start + k + half] * twiddles[k];
                buf[start + k] = a + b;
                buf[start + k + half] = a - b;
            }
        }
        len *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_signal(n: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn matches_direct_transform() {
        for (n, seed) in [(1, 1), (2, 2), (8, 3), (64, 4), (1024, 5)] {
            let x = random_signal(n, seed);
            let mut y = x.clone();
            fft(&mut y);
            assert!(max_diff(&y, &dft(&x, false)) < 1e-10 * n as f64, "n = {n}");
            ifft(&mut y);
            assert!(max_diff(&y, &x) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn impulse_and_tone() {
        let mut x = vec![Complex64::new(0.0, 0.0); 16];
        x[0] = Complex64::new(1.0, 0.0);
        fft(&mut x);
        assert!(x.iter().all(|z| (z - 1.0).norm() < 1e-15));

        let n = 32;
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((TAU * 3.0 * i as f64 / n as f64).cos(), 0.0))
            .collect();
        fft(&mut x);
        for (k, z) in x.iter().enumerate() {
            let expected = if k == 3 || k == n - 3 { n as f64 / 2.0 } else { 0.0 };
            assert!((z.re - expected).abs() < 1e-12 && z.im.abs() < 1e-12, "bin {k}: {z}");
        }
    }

    #[test]
    fn direct_transform_round_trip_any_length() {
        let x = random_signal(12, 9);
        let back = dft(&dft(&x, false), true);
        assert!(max_diff(&x, &back) < 1e-13);
        let mut y = x.clone();
        transform(&mut y, false);
        transform(&mut y, true);
        assert!(max_diff(&x, &y) < 1e-13);
    }

    #[test]
    #[should_panic]
    fn rejects_odd_length() {
        fft(&mut [Complex64::new(1.0, 0.0); 3]);
    }
}
