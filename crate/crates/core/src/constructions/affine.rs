use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::math::is_prime;
use crate::{Error, Result};

/// A point `(x, y)` of `F_q²`.
pub type Point = (u64, u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Line {
    /// `y = m·x + c`.
    Sloped { m: u64, c: u64 },
    /// `x = c`.
    Vertical { c: u64 },
}

/// How each line's fixed-point-free permutation is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaChoice {
    /// Cyclic shift by one in the line's canonical point order.
    Cyclic,
    /// A uniformly random derangement per line, drawn from a seeded generator.
    Random { seed: u64 },
}

/// Points, lines and flags of the affine plane over a prime field, with one
/// fixed-point-free permutation of the points of every line.
///
/// Points are indexed row-major (`x·q + y`). Lines are `(m, c)` in
/// lexicographic order followed by the verticals ordered by `c`. The points
/// of a sloped line are listed by increasing `x`, those of a vertical line by
/// increasing `y`.
#[derive(Debug, Clone)]
pub struct AffineIncidence {
    q: u64,
    lines: Vec<Line>,
    line_points: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    flags: Vec<(usize, usize)>,
    // sigma[line][position] = point index of the image of line_points[line][position]
    sigma: Vec<Vec<usize>>,
    sigma_choice: SigmaChoice,
}

impl AffineIncidence {
    pub fn new(q: u64) -> Result<Self> {
        Self::with_sigma(q, SigmaChoice::Cyclic)
    }

    pub fn with_sigma(q: u64, sigma_choice: SigmaChoice) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let qs = q as usize;
        let point = |x: u64, y: u64| (x * q + y) as usize;
        let mut lines = Vec::with_capacity(qs * qs + qs);
        let mut line_points: Vec<Vec<usize>> = Vec::with_capacity(qs * qs + qs);
        for m in 0..q {
            for c in 0..q {
                lines.push(Line::Sloped { m, c });
                line_points.push((0..q).map(|x| point(x, (m * x + c) % q)).collect());
            }
        }
        for c in 0..q {
            lines.push(Line::Vertical { c });
            line_points.push((0..q).map(|y| point(c, y)).collect());
        }
        let mut point_lines: Vec<Vec<usize>> = alloc::vec![Vec::new(); qs * qs];
        for (l, pts) in line_points.iter().enumerate() {
            for &p in pts {
                point_lines[p].push(l);
            }
        }
        let mut flags: Vec<(usize, usize)> =
            point_lines.iter().enumerate().flat_map(|(p, ls)| ls.iter().map(move |&l| (p, l))).collect();
        flags.sort_unstable();

        let sigma = match sigma_choice {
            SigmaChoice::Cyclic => line_points.iter().map(|pts| cyclic_images(pts)).collect(),
            SigmaChoice::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                line_points.iter().map(|pts| random_derangement(pts, &mut rng)).collect()
            }
        };
        Ok(Self { q, lines, line_points, point_lines, flags, sigma, sigma_choice })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sigma_choice(&self) -> SigmaChoice {
        self.sigma_choice
    }

    pub fn point_count(&self) -> usize {
        (self.q * self.q) as usize
    }

    pub fn point(&self, index: usize) -> Point {
        (index as u64 / self.q, index as u64 % self.q)
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Point indices of a line in canonical order.
    pub fn points_on(&self, line: usize) -> &[usize] {
        &self.line_points[line]
    }

    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.point_lines[point]
    }

    /// Incident `(point, line)` index pairs, sorted.
    pub fn flags(&self) -> &[(usize, usize)] {
        &self.flags
    }

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.line_points[line].contains(&point)
    }

    /// The fixed-point-free permutation of `line` as a list of
    /// `(point, image)` pairs in canonical point order.
    pub fn fpf_permutation(&self, line: usize) -> Result<Vec<(usize, usize)>> {
        let pts = self.line_points.get(line).ok_or(Error::LineNotInPlane(line))?;
        Ok(pts.iter().copied().zip(self.sigma[line].iter().copied()).collect())
    }

    /// `σ_line(point)`. Panics if the point is not on the line.
    pub fn sigma(&self, line: usize, point: usize) -> usize {
        let pos = self.line_points[line].iter().position(|&p| p == point).expect("point on line");
        self.sigma[line][pos]
    }
}

fn cyclic_images(points: &[usize]) -> Vec<usize> {
    (0..points.len()).map(|i| points[(i + 1) % points.len()]).collect()
}

fn random_derangement(points: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut images = points.to_vec();
    loop {
        images.shuffle(rng);
        if images.iter().zip(points).all(|(a, b)| a != b) {
            return images;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (q, p, l, s) in [(2, 4, 6, 12), (3, 9, 12, 36), (5, 25, 30, 150), (7, 49, 56, 392)] {
            let plane = AffineIncidence::new(q).unwrap();
            assert_eq!(plane.point_count(), p);
            assert_eq!(plane.lines().len(), l);
            assert_eq!(plane.flags().len(), s);
            for line in 0..l {
                assert_eq!(plane.points_on(line).len(), q as usize);
            }
            for point in 0..p {
                assert_eq!(plane.lines_through(point).len(), q as usize + 1);
            }
        }
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(AffineIncidence::new(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(AffineIncidence::new(1).unwrap_err(), Error::NotPrime(1));
        assert_eq!(AffineIncidence::new(0).unwrap_err(), Error::NotPrime(0));
    }

    #[test]
    fn lines_meet_at_most_once() {
        for q in [2, 3, 5] {
            let plane = AffineIncidence::new(q).unwrap();
            let n = plane.lines().len();
            for a in 0..n {
                for b in a + 1..n {
                    let common = plane.points_on(a).iter().filter(|p| plane.points_on(b).contains(p)).count();
                    assert!(common <= 1);
                }
            }
        }
    }

    #[test]
    fn canonical_order() {
        let plane = AffineIncidence::new(3).unwrap();
        assert_eq!(plane.lines()[0], Line::Sloped { m: 0, c: 0 });
        assert_eq!(plane.lines()[9], Line::Vertical { c: 0 });
        // y = 2x + 1 over F_3: (0,1), (1,0), (2,2)
        assert_eq!(plane.points_on(7), [1, 3, 8]);
        assert_eq!(plane.point(8), (2, 2));
    }

    #[test]
    fn q2_sigma_is_the_swap() {
        let plane = AffineIncidence::new(2).unwrap();
        for line in 0..plane.lines().len() {
            let pts = plane.points_on(line);
            assert_eq!(plane.fpf_permutation(line).unwrap(), [(pts[0], pts[1]), (pts[1], pts[0])]);
        }
        assert_eq!(plane.fpf_permutation(6), Err(Error::LineNotInPlane(6)));
    }

    #[test]
    fn sigma_is_fixed_point_free_bijection() {
        for choice in [SigmaChoice::Cyclic, SigmaChoice::Random { seed: 9 }] {
            for q in [2, 3, 5] {
                let plane = AffineIncidence::with_sigma(q, choice).unwrap();
                for line in 0..plane.lines().len() {
                    let perm = plane.fpf_permutation(line).unwrap();
                    let mut images: Vec<usize> = perm.iter().map(|&(_, y)| y).collect();
                    assert!(perm.iter().all(|&(p, y)| p != y && plane.incident(y, line)));
                    images.sort_unstable();
                    let mut pts = plane.points_on(line).to_vec();
                    pts.sort_unstable();
                    assert_eq!(images, pts);
                }
            }
        }
    }

    #[test]
    fn flag_triples_have_distinct_images() {
        // e1 = (p, l'), e2 = (p, l), e3 = (p', l) with l' != l and p' != p
        for q in [2, 3] {
            let plane = AffineIncidence::new(q).unwrap();
            for p in 0..plane.point_count() {
                for &l in plane.lines_through(p) {
                    for &l2 in plane.lines_through(p).iter().filter(|&&x| x != l) {
                        for &p2 in plane.points_on(l).iter().filter(|&&x| x != p) {
                            let (x, y, z) = (plane.sigma(l2, p), plane.sigma(l, p), plane.sigma(l, p2));
                            assert!(x != y && y != z && x != z, "q={q} p={p} l={l} l'={l2} p'={p2}");
                        }
                    }
                }
            }
        }
    }
}
