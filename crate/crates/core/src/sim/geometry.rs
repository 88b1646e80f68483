//! Planar geometry: the hexagonal cell and point-process sampling.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

/// A point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A flat-top regular hexagon (vertices on the horizontal axis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hexagon {
    pub center: Point,
    /// Distance from the center to a vertex.
    pub circumradius: f64,
}

impl Hexagon {
    pub fn new(center: Point, circumradius: f64) -> Self {
        assert!(circumradius > 0.0, "hexagon needs a positive circumradius");
        Hexagon { center, circumradius }
    }

    /// Cell spanned by a regular grid with the given inter-site distance:
    /// the circumradius is `isd / sqrt(3)`.
    pub fn from_inter_site_distance(isd: f64) -> Self {
        Hexagon::new(Point::new(0.0, 0.0), isd / 3f64.sqrt())
    }

    pub fn area(&self) -> f64 {
        1.5 * 3f64.sqrt() * self.circumradius * self.circumradius
    }

    /// Same center, radius scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Hexagon::new(self.center, self.circumradius * factor)
    }

    pub fn contains(&self, p: Point) -> bool {
        let r = self.circumradius;
        let s3 = 3f64.sqrt();
        let dx = (p.x - self.center.x).abs();
        let dy = (p.y - self.center.y).abs();
        dx <= r && dy <= s3 * r / 2.0 && s3 * dx + dy <= s3 * r
    }

    /// Index in 0..6 of the triangular sector (by polar angle from the
    /// center) containing `p`. Only meaningful for points inside the
    /// hexagon; the six sectors have equal area.
    pub fn sector(&self, p: Point) -> usize {
        let angle = (p.y - self.center.y).atan2(p.x - self.center.x);
        let turn = angle.rem_euclid(std::f64::consts::TAU);
        ((turn / (std::f64::consts::TAU / 6.0)) as usize).min(5)
    }

    /// Uniform point by rejection from the bounding box (acceptance 3/4).
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let r = self.circumradius;
        let half_height = 3f64.sqrt() * r / 2.0;
        loop {
            let p = Point::new(
                self.center.x + rng.gen_range(-r..=r),
                self.center.y + rng.gen_range(-half_height..=half_height),
            );
            if self.contains(p) {
                return p;
            }
        }
    }

    /// A Poisson point process of the given density restricted to the
    /// hexagon: Poisson count with mean `density * area`, then that many
    /// uniform points.
    pub fn sample_ppp<R: Rng + ?Sized>(&self, density: f64, rng: &mut R) -> Vec<Point> {
        assert!(density >= 0.0, "densities are non-negative");
        let mean = density * self.area();
        if mean == 0.0 {
            return Vec::new();
        }
        let count = Poisson::new(mean)
            .expect("positive finite mean")
            .sample(rng) as usize;
        (0..count).map(|_| self.sample_uniform(rng)).collect()
    }
}

/// Distance from a point of a planar Poisson process of density `lambda`
/// to its nearest neighbor: Rayleigh-type law with
/// `P(D > x) = exp(-pi lambda x^2)`, sampled by inversion. The zero value
/// (probability zero, but reachable through floating-point corner cases)
/// is rejected so that downstream path-loss terms stay finite.
pub fn rayleigh_nearest_distance<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> f64 {
    assert!(lambda > 0.0, "nearest-neighbor law needs a positive density");
    loop {
        let u: f64 = rng.gen();
        let d = (-(1.0 - u).ln() / (std::f64::consts::PI * lambda)).sqrt();
        if d > 0.0 {
            return d;
        }
    }
}
