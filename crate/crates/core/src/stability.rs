//! Linear stability of planar fixed points from trace and determinant.

use std::fmt;

use num_complex::Complex64;

/// Real parts within this distance of zero count as non-hyperbolic.
pub const HYPERBOLIC_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian {
    pub m: [[f64; 2]; 2],
}

impl Jacobian {
    pub fn new(m: [[f64; 2]; 2]) -> Self {
        Jacobian { m }
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }

    /// Roots of `l^2 - tr l + det`, larger real part first.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        eigenvalues_from(self.trace(), self.det())
    }
}

pub fn eigenvalues_from(tr: f64, det: f64) -> [Complex64; 2] {
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // avoid cancellation in the smaller-magnitude root
        let big = 0.5 * (tr + if tr >= 0.0 { sq } else { -sq });
        let small = if big != 0.0 { det / big } else { 0.5 * (tr - sq) };
        let (hi, lo) = if big >= small { (big, small) } else { (small, big) };
        [Complex64::new(hi, 0.0), Complex64::new(lo, 0.0)]
    } else {
        let im = 0.5 * (-disc).sqrt();
        let re = 0.5 * tr;
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    StableNode,
    UnstableNode,
    Saddle,
    StableFocus,
    UnstableFocus,
    CenterCandidate,
    Nonhyperbolic,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::StableNode => "stable_node",
            Stability::UnstableNode => "unstable_node",
            Stability::Saddle => "saddle",
            Stability::StableFocus => "stable_focus",
            Stability::UnstableFocus => "unstable_focus",
            Stability::CenterCandidate => "center_candidate",
            Stability::Nonhyperbolic => "nonhyperbolic",
        }
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::StableNode | Stability::StableFocus)
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_eigenvalues(eig: &[Complex64; 2]) -> Stability {
    let tol = HYPERBOLIC_TOL;
    if eig[0].im != 0.0 {
        let re = eig[0].re;
        return if re < -tol {
            Stability::StableFocus
        } else if re > tol {
            Stability::UnstableFocus
        } else {
            Stability::CenterCandidate
        };
    }
    let (a, b) = (eig[0].re, eig[1].re);
    if a < -tol && b < -tol {
        Stability::StableNode
    } else if a > tol && b > tol {
        Stability::UnstableNode
    } else if (a > tol && b < -tol) || (a < -tol && b > tol) {
        Stability::Saddle
    } else {
        Stability::Nonhyperbolic
    }
}

pub fn classify_stability(jacobian: &Jacobian) -> ([Complex64; 2], Stability) {
    let eig = jacobian.eigenvalues();
    (eig, classify_eigenvalues(&eig))
}
