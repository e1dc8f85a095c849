//! Standard parabolic subgroups: the factorization `w = w^J · w_J`, longest
//! elements, and bounded closures under right multiplication.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::system::{Bond, CoxeterSystem, Element, Side};

/// `w = prefix · suffix` with `prefix ∈ W^J` and `suffix ∈ W_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicDecomposition {
    pub subset: Vec<usize>,
    pub prefix: Element,
    pub suffix: Element,
}

/// Why a closure stopped before becoming stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Cap,
    Region,
}

/// Closure of the identity under right multiplication by a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    /// Elements in discovery order.
    pub elements: Vec<Element>,
    pub truncation: Option<Truncation>,
}

impl Ball {
    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }
}

impl CoxeterSystem {
    pub fn parabolic_decompose(&self, w: Element, subset: &[usize]) -> Result<ParabolicDecomposition> {
        if let Some(&s) = subset.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::InvalidGenerator(s));
        }
        let mut prefix = w;
        let mut peeled = Vec::new();
        while let Some(&s) = subset
            .iter()
            .find(|&&s| self.has_descent(prefix, s, Side::Right))
        {
            prefix = self.right_mul(prefix, s).expect("descents are enumerated");
            peeled.push(s);
        }
        peeled.reverse();
        let suffix = self.element_from_word(&peeled)?;
        Ok(ParabolicDecomposition {
            subset: subset.to_vec(),
            prefix,
            suffix,
        })
    }

    /// The longest element of the finite parabolic subgroup `W_J`.
    pub fn longest_element(&self, subset: &[usize]) -> Result<Element> {
        if let Some(&s) = subset.iter().find(|&&s| s >= self.rank()) {
            return Err(Error::InvalidGenerator(s));
        }
        let infinite = || Error::InfiniteParabolic(subset.to_vec());
        for (i, &s) in subset.iter().enumerate() {
            if subset[i + 1..].iter().any(|&t| self.bond(s, t) == Bond::Infinite) {
                return Err(infinite());
            }
        }
        let gens = subset
            .iter()
            .map(|&s| self.generator(s))
            .collect::<Result<Vec<_>>>()?;
        let ball = self.enumerate_ball(&gens, self.cap());
        if !ball.is_complete() {
            return Err(infinite());
        }
        Ok(ball
            .elements
            .into_iter()
            .max_by_key(|&w| (self.length(w), std::cmp::Reverse(w)))
            .expect("ball contains the identity"))
    }

    /// Closure of `{e}` under right multiplication by `gens`, stopped at
    /// `cap` elements or at the edge of the enumerated region.
    pub fn enumerate_ball(&self, gens: &[Element], cap: usize) -> Ball {
        let mut seen = HashSet::from([Element::IDENTITY]);
        let mut elements = vec![Element::IDENTITY];
        let mut truncation = None;
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next];
            next += 1;
            for &g in gens {
                let Ok(y) = self.multiply(x, g) else {
                    truncation.get_or_insert(Truncation::Region);
                    continue;
                };
                if seen.contains(&y) {
                    continue;
                }
                if elements.len() >= cap {
                    truncation.get_or_insert(Truncation::Cap);
                    continue;
                }
                seen.insert(y);
                elements.push(y);
            }
        }
        Ball { elements, truncation }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn f4() -> CoxeterSystem {
        CoxeterSystem::build(named::matrix("F4").unwrap(), 2000).unwrap()
    }

    #[test]
    fn decompose_f4_example() {
        let sys = f4();
        let w = sys.element_from_word(&[0, 1, 2, 1]).unwrap();
        let d = sys.parabolic_decompose(w, &[1, 2]).unwrap();
        assert_eq!(d.prefix, sys.element_from_word(&[0]).unwrap());
        assert_eq!(d.suffix, sys.element_from_word(&[1, 2, 1]).unwrap());
    }

    #[test]
    fn decompose_trivial_cases() {
        let sys = f4();
        let e = sys.identity();
        let d = sys.parabolic_decompose(e, &[0, 2]).unwrap();
        assert_eq!((d.prefix, d.suffix), (e, e));
        let w = sys.element_from_word(&[3, 1, 2, 0]).unwrap();
        let d = sys.parabolic_decompose(w, &[]).unwrap();
        assert_eq!((d.prefix, d.suffix), (w, e));
    }

    #[test]
    fn longest_elements() {
        let sys = f4();
        assert_eq!(sys.longest_element(&[0]).unwrap(), sys.generator(0).unwrap());
        let w = sys.longest_element(&[1, 2]).unwrap();
        assert_eq!(sys.length(w), 4);
        assert_eq!(w, sys.element_from_word(&[1, 2, 1, 2]).unwrap());
        assert_eq!(sys.length(sys.longest_element(&[0, 1, 2, 3]).unwrap()), 24);
        assert_eq!(sys.longest_element(&[]).unwrap(), sys.identity());
    }

    #[test]
    fn infinite_parabolic() {
        let sys = CoxeterSystem::build(named::matrix("I2(inf)xA1").unwrap(), 100).unwrap();
        assert_eq!(sys.longest_element(&[0, 1]), Err(Error::InfiniteParabolic(vec![0, 1])));
        assert_eq!(sys.longest_element(&[0, 2]).unwrap(), sys.element_from_word(&[0, 2]).unwrap());
    }

    #[test]
    fn balls() {
        let sys = f4();
        assert_eq!(sys.enumerate_ball(&[], 10).elements, vec![sys.identity()]);
        let x = sys.element_from_word(&[0, 3]).unwrap();
        let y = sys.element_from_word(&[1, 2, 1, 2]).unwrap();
        let ball = sys.enumerate_ball(&[x, y], 1000);
        assert!(ball.is_complete());
        assert_eq!(ball.elements.len(), 16);

        let inf = CoxeterSystem::build(named::matrix("I2(inf)").unwrap(), 1000).unwrap();
        let gens: Vec<_> = inf.generators().collect();
        let ball = inf.enumerate_ball(&gens, 10);
        assert_eq!(ball.elements.len(), 10);
        assert_eq!(ball.truncation, Some(Truncation::Cap));
        let small = CoxeterSystem::build(named::matrix("I2(inf)").unwrap(), 9).unwrap();
        let gens: Vec<_> = small.generators().collect();
        assert_eq!(small.enumerate_ball(&gens, 100).truncation, Some(Truncation::Region));
    }
}
