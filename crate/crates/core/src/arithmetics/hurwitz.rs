use crate::coefficients::Rat;
use crate::error::{Error, Result};

/// Reduced positive-definite forms `(a, b, c)` with `b^2 - 4ac = -delta`:
/// `|b| <= a <= c`, and `b >= 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(delta: u64) -> Vec<(i64, i64, i64)> {
    let delta = delta as i64;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= delta {
        for b in -a + 1..=a {
            let num = b * b + delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            forms.push((a, b, c));
        }
        a += 1;
    }
    forms
}

/// Hurwitz class number `H(delta)`: reduced forms of discriminant `-delta`,
/// weighted 1/2 for multiples of `x^2 + y^2` and 1/3 for multiples of
/// `x^2 + xy + y^2`.
pub fn hurwitz_class_number(delta: u64) -> Result<Rat> {
    if delta == 0 {
        return Err(Error::HurwitzZero);
    }
    if matches!(delta % 4, 1 | 2) {
        return Ok(Rat::zero());
    }
    Ok(reduced_forms(delta)
        .into_iter()
        .map(|(a, b, c)| match (a == c, b) {
            (true, 0) => Rat::new(1, 2),
            (true, b) if b == a => Rat::new(1, 3),
            _ => Rat::one(),
        })
        .sum())
}
