//! Strong Bruhat order.

use crate::system::{CoxeterSystem, Element, Side};

impl CoxeterSystem {
    /// `u ≤ w` in the strong Bruhat order.
    ///
    /// Peels off a left descent `s` of `w` (the first letter of its canonical
    /// word) and uses the lifting property: if `s` is also a left descent of
    /// `u` then `u ≤ w ⇔ su ≤ sw`, otherwise `u ≤ w ⇔ u ≤ sw`.
    pub fn bruhat_leq(&self, mut u: Element, mut w: Element) -> bool {
        loop {
            let (lu, lw) = (self.length(u), self.length(w));
            if lu > lw {
                return false;
            }
            if lu == lw {
                return u == w;
            }
            if lu == 0 {
                return true;
            }
            let s = self.word(w)[0] as usize;
            let sw = self.left_mul(s, w).expect("left descents are enumerated");
            if self.has_descent(u, s, Side::Left) {
                u = self.left_mul(s, u).expect("left descents are enumerated");
            }
            w = sw;
        }
    }

    pub fn bruhat_lt(&self, u: Element, w: Element) -> bool {
        u != w && self.bruhat_leq(u, w)
    }
}
