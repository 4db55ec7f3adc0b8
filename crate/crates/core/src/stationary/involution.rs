use crate::error::{domain, Result};
use crate::numerics::{lse, softplus};

/// `Θ(I, J, Y) = (Y(1 + I/J), Y(1 + J/I), (1/I + 1/J)⁻¹)`.
pub fn apply_involution(i: f64, j: f64, y: f64) -> Result<(f64, f64, f64)> {
    if !(i > 0.0 && j > 0.0 && y > 0.0) {
        return domain(format!("involution needs positive inputs, got ({i}, {j}, {y})"));
    }
    Ok((y * (1.0 + i / j), y * (1.0 + j / i), 1.0 / (1.0 / i + 1.0 / j)))
}

/// [`apply_involution`] on logs.
#[inline]
pub fn theta_log(li: f64, lj: f64, ly: f64) -> (f64, f64, f64) {
    let d = li - lj;
    (ly + softplus(d), ly + softplus(-d), -lse(-li, -lj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::RngStream;

    #[test]
    fn hand_example() {
        let (a, b, c) = apply_involution(2.0, 1.0, 3.0).unwrap();
        assert!((a - 9.0).abs() < 1e-14 && (b - 4.5).abs() < 1e-14 && (c - 2.0 / 3.0).abs() < 1e-15);
        let (x, y, z) = apply_involution(a, b, c).unwrap();
        assert!((x - 2.0).abs() < 1e-14 && (y - 1.0).abs() < 1e-14 && (z - 3.0).abs() < 1e-14);
        let (a, b, c) = apply_involution(5.0, 5.0, 5.0).unwrap();
        assert_eq!((a, b, c), (10.0, 10.0, 2.5));
        assert!(apply_involution(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn involutive_in_logs() {
        let mut r = RngStream::new(1, 1);
        for _ in 0..10_000 {
            let (li, lj, ly) = (
                (r.next_f64() - 0.5) * 20.0,
                (r.next_f64() - 0.5) * 20.0,
                (r.next_f64() - 0.5) * 20.0,
            );
            let (a, b, c) = theta_log(li, lj, ly);
            let (x, y, z) = theta_log(a, b, c);
            assert!((x - li).abs() < 1e-12 && (y - lj).abs() < 1e-12 && (z - ly).abs() < 1e-12);
            // conservation Ĩ·Ỹ = I·Y
            assert!((a + c - li - ly).abs() < 1e-12);
        }
    }
}
