//! Events and tangent vectors.
//!
//! Coordinates are stored as `[t, y1, y2, y3]`; components beyond the
//! metric's spatial dimension are kept at zero.  Everything is `Copy` so
//! the fan/bisection inner loops stay allocation free.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub coords: [f64; 4],
}

impl Event {
    pub fn new(coords: [f64; 4]) -> Self {
        Event { coords }
    }

    /// 1+1 convenience constructor.
    pub fn tx(t: f64, x: f64) -> Self {
        Event {
            coords: [t, x, 0.0, 0.0],
        }
    }

    pub fn t(&self) -> f64 {
        self.coords[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.coords[1], self.coords[2], self.coords[3]]
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
}

impl std::fmt::Display for CausalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CausalClass::Timelike => write!(f, "timelike"),
            CausalClass::Null => write!(f, "null"),
            CausalClass::Spacelike => write!(f, "spacelike"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeOrientation {
    Future,
    Past,
    /// Spacelike vectors carry no orientation.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVec {
    pub base: Event,
    pub comps: [f64; 4],
}

impl TangentVec {
    pub fn new(base: Event, comps: [f64; 4]) -> Self {
        TangentVec { base, comps }
    }

    pub fn scaled(&self, c: f64) -> Self {
        TangentVec {
            base: self.base,
            comps: [
                self.comps[0] * c,
                self.comps[1] * c,
                self.comps[2] * c,
                self.comps[3] * c,
            ],
        }
    }

    /// Euclidean norm of the components; used as the `g+` scale on the
    /// flat families where `g+` is the coordinate Euclidean metric.
    pub fn euclid_norm(&self) -> f64 {
        self.comps.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}
