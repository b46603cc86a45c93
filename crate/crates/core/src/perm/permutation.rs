use std::fmt;

use crate::arith::lcm;
use crate::error::{Error, Result};

/// A bijection of `{0, .., degree-1}`.
///
/// Products compose left to right: `a.mul(&b)` applies `a` first, then `b`,
/// so `x^(ab) = (x^a)^b`. Cycle notation in text form is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::Format(format!(
                    "image {} out of range for degree {n}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Format(format!("image {} repeated", x + 1)));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Unchecked constructor for callers that build images from a known
    /// bijection.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images
                .iter()
                .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
        });
        Permutation { images }
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    /// Cycles are composed left to right.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut perm = Permutation::identity(degree);
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Format(format!("expected '(' in {text:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Format(format!("unclosed cycle in {text:?}")))?;
            let body = &rest[1..close];
            let mut points = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::Format(format!("bad point {tok:?} in {text:?}")))?;
                if x == 0 || x > degree {
                    return Err(Error::Format(format!(
                        "point {x} out of range 1..={degree}"
                    )));
                }
                if points.contains(&(x - 1)) {
                    return Err(Error::Format(format!("point {x} repeated in a cycle")));
                }
                points.push(x - 1);
            }
            if points.len() > 1 {
                let mut images: Vec<usize> = (0..degree).collect();
                for (i, &x) in points.iter().enumerate() {
                    images[x] = points[(i + 1) % points.len()];
                }
                perm = perm.mul(&Permutation::from_images(images)?);
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().mul(self).mul(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Same permutation acting on `degree` points (extra points fixed).
    pub fn extended(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// 1-based cycle string, `"()"` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.to_cycle_string(), self.degree())
    }
}
