//! Recognition of boundary data lying in a hyperelliptic component.
//!
//! A datum is matched against three normal forms after trying every
//! relabeling of the saddle connections and nodes. Positions below are
//! 1-based and read cyclically; `pole(i)` is the pole in region `i`.
//!
//! * Mirror (`t = n`): `C(i) + C(-i) = b` for mirrored poles of equal order
//!   and `(0, d_{n-1})` in the class. The involution is `i <-> -i`.
//! * Offset mirror (`t = n`): `C(i+1) + C(-i) = b` for poles of equal order
//!   and `(0, 0)` in the class. The involution is `i <-> 1 - i`.
//! * Bottom fixed (`t = n - 1`): the top block satisfies the mirror rule
//!   around region 1, the bottom pole has `2C = b`, and `(0, d_1)` is in the
//!   class. The involution is `i <-> 2 - i` on the top block and fixes the
//!   bottom pole.

use crate::arith::reduce;
use crate::datum::TwoLevelDatum;
use crate::profile::RamificationProfile;

/// The ramification profile of the hyperelliptic component whose boundary
/// contains `datum`, when some representation matches a normal form.
pub fn hyperelliptic_boundary_profile(datum: &TwoLevelDatum) -> Option<RamificationProfile> {
    let n = datum.n();
    if datum.t() + 1 < n {
        return None;
    }
    datum.symmetry_images().iter().find_map(match_image)
}

fn match_image(y: &TwoLevelDatum) -> Option<RamificationProfile> {
    let n = y.n() as i64;
    let b = y.sig().pole_orders();
    let c = y.c_vec();
    let tau = y.tau();
    let class = y.pr();
    if y.t() as i64 == n {
        let pole = |i: i64| tau[reduce(i - 1, n as u32) as usize];
        let paired = |i: i64, j: i64| {
            let (p, q) = (pole(i), pole(j));
            b[p] == b[q] && c[p] + c[q] == b[p]
        };
        let involution = |mirror: fn(i64) -> i64| {
            let mut img = vec![0; tau.len()];
            for i in 1..=n {
                img[pole(i)] = pole(mirror(i));
            }
            RamificationProfile::new(y.sig(), img)
        };
        let d_prev = i64::from(y.d_prefix()[tau.len() - 1]);
        if (1..=n).all(|i| paired(i, -i)) && class.contains(0, d_prev) {
            if let Some(p) = involution(|i| -i) {
                return Some(p);
            }
        }
        if (1..=n).all(|i| paired(i + 1, -i)) && class.contains(0, 0) {
            if let Some(p) = involution(|i| 1 - i) {
                return Some(p);
            }
        }
        None
    } else if y.t() as i64 == n - 1 && n >= 2 {
        let m = n - 1;
        let top = |i: i64| tau[reduce(i - 1, m as u32) as usize];
        let last = tau[tau.len() - 1];
        let top_paired = (1..=m).all(|i| {
            let (p, q) = (top(i), top(2 - i));
            b[p] == b[q] && c[p] + c[q] == b[p]
        });
        if top_paired && 2 * c[last] == b[last] && class.contains(0, i64::from(y.d_prefix()[1])) {
            let mut img = vec![0; tau.len()];
            img[last] = last;
            for i in 1..=m {
                img[top(i)] = top(2 - i);
            }
            return RamificationProfile::new(y.sig(), img);
        }
        None
    } else {
        None
    }
}
