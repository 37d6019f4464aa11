//! Closed-form values of `rx3(K_{2,t})` and explicit colorings achieving them.

use serde::{Deserialize, Serialize};

use crate::coloring::{BipartiteColoring, Color, ColorCode};
use crate::error::{Error, Result};

/// The range of `t` sharing one value of the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueInterval {
    pub k: Color,
    pub t_min: usize,
    pub t_max: usize,
}

impl ValueInterval {
    pub fn contains(&self, t: usize) -> bool {
        (self.t_min..=self.t_max).contains(&t)
    }
}

const fn cc(a1: Color, a2: Color) -> ColorCode {
    ColorCode::new(a1, a2)
}

/// Four isolated rooks on the 3x3 board.
pub const ROOKS4: [ColorCode; 4] = [cc(1, 2), cc(2, 1), cc(1, 3), cc(3, 1)];

/// First sorted 8-multiset over four colors that is acceptable together with
/// its prefixes of length 5, 6 and 7 (see the derivation test).
pub const ACCEPT8: [ColorCode; 8] =
    [cc(1, 2), cc(1, 3), cc(2, 1), cc(2, 4), cc(3, 1), cc(3, 4), cc(4, 2), cc(4, 3)];

/// Ten five-color codes covering every unordered color pair once.
pub const TEN_CODES: [ColorCode; 10] =
    [cc(1, 2), cc(2, 3), cc(3, 4), cc(4, 5), cc(3, 1), cc(4, 2), cc(5, 3), cc(1, 4), cc(2, 5), cc(5, 1)];

/// The other ten off-diagonal five-color codes, ascending.
pub const REMAINING_TEN: [ColorCode; 10] =
    [cc(1, 3), cc(1, 5), cc(2, 1), cc(2, 4), cc(3, 2), cc(3, 5), cc(4, 1), cc(4, 3), cc(5, 2), cc(5, 4)];

fn check_t(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    Ok(())
}

/// `rx3(K_{2,t})`.
pub fn rx3_value(t: usize) -> Result<Color> {
    check_t(t)?;
    Ok(match t {
        1..=2 => 2,
        3..=4 => 3,
        5..=8 => 4,
        9..=20 => 5,
        _ => {
            // largest k with (k-1)(k-2) + 1 <= t
            let t = t as u64;
            let mut k = (3 + (4 * t - 3).isqrt()) / 2;
            while (k - 1) * (k - 2) + 1 > t {
                k -= 1;
            }
            while k * (k + 1) < t {
                k += 1;
            }
            k as Color
        }
    })
}

/// The values of `t` with `rx3(K_{2,t}) = k`.
pub fn rx3_interval(k: Color) -> Result<ValueInterval> {
    let (t_min, t_max) = match k {
        0 | 1 => return Err(Error::invalid(format!("no t has index {k}; k must be at least 2"))),
        2 => (1, 2),
        3 => (3, 4),
        4 => (5, 8),
        5 => (9, 20),
        _ => {
            let k = k as usize;
            ((k - 1) * (k - 2) + 1, k * (k - 1))
        }
    };
    Ok(ValueInterval { k, t_min, t_max })
}

/// Codes `(a, b)` with `a < b` over `1..=k`, ascending.
pub fn upper_triangle(k: Color) -> impl Iterator<Item = ColorCode> {
    (1..=k).flat_map(move |a| (a + 1..=k).map(move |b| cc(a, b)))
}

/// Codes `(a, b)` with `a > b` over `1..=k`, ascending.
pub fn lower_triangle(k: Color) -> impl Iterator<Item = ColorCode> {
    (1..=k).flat_map(move |a| (1..a).map(move |b| cc(a, b)))
}

/// A 3-rainbow coloring of `K_{2,t}` with exactly `rx3_value(t)` colors.
pub fn construct_coloring(t: usize) -> Result<BipartiteColoring> {
    let k = rx3_value(t)?;
    let codes: Vec<ColorCode> = match k {
        2 => [cc(1, 2), cc(2, 1)][..t].to_vec(),
        3 => ROOKS4[..t].to_vec(),
        4 => ACCEPT8[..t].to_vec(),
        5 => TEN_CODES.iter().chain(&REMAINING_TEN).take(t).copied().collect(),
        _ => upper_triangle(k).chain(lower_triangle(k)).take(t).collect(),
    };
    BipartiteColoring::new(k, codes)
}
