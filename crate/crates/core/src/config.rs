//! Size caps and numerical tolerances shared by the library and the CLI.

use crate::error::{Error, Result};

/// Size caps. Exceeding one is an explicit [`Error::CapExceeded`], never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Generator cap for operations on the full complex (`b + c` generators).
    pub full_complex: usize,
    /// Generator cap for single-degree operations on the basic complex (`b` generators).
    pub single_degree: usize,
    /// Cap on `b` for the eigensolve path of the partition function.
    pub spectral: usize,
    /// Vertex cap for brute-force independent-set enumeration.
    pub enumeration: usize,
    /// Vertex cap for the combinatorial graph partition function.
    pub graph_spectral: usize,
    pub trinks_vertices: usize,
    pub trinks_edges: usize,
    /// Node budget for the non-coordinate abelian subalgebra search.
    pub abelian_search_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            full_complex: 20,
            single_degree: 26,
            spectral: 14,
            enumeration: 24,
            graph_spectral: 20,
            trinks_vertices: 8,
            trinks_edges: 12,
            abelian_search_nodes: 500,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }

    /// Applies overrides of the form `exact=24,spectral=16,enum=26`.
    ///
    /// Recognised keys: `exact` (sets both exact caps), `full`, `single`, `spectral`,
    /// `enum`, `graph`, `trinks-vertices`, `trinks-edges`, `abelian-nodes`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap override `{item}` has a non-integer value")))?;
            if value == 0 {
                return Err(Error::InvalidInput(format!("cap `{key}` must be positive")));
            }
            match key.trim() {
                "exact" => {
                    self.full_complex = value;
                    self.single_degree = value;
                }
                "full" => self.full_complex = value,
                "single" => self.single_degree = value,
                "spectral" => self.spectral = value,
                "enum" => self.enumeration = value,
                "graph" => self.graph_spectral = value,
                "trinks-vertices" => self.trinks_vertices = value,
                "trinks-edges" => self.trinks_edges = value,
                "abelian-nodes" => self.abelian_search_nodes = value,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        if self.full_complex > 64 || self.single_degree > 64 || self.enumeration > 64 {
            return Err(Error::InvalidInput(
                "generator and vertex caps cannot exceed 64 (bitmask width)".into(),
            ));
        }
        Ok(self)
    }
}

/// Tolerances for the floating-point spectral path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues with `|λ| <= zero * max(1, ||M||_inf)` are reported as zero energy.
    pub zero: f64,
    /// Relative gap below which neighbouring eigenvalues share a cluster.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: 1e-8,
            cluster: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn new(zero: f64, cluster: f64) -> Result<Self> {
        for (name, v) in [("zero", zero), ("cluster", cluster)] {
            if !(v > 0.0 && v < 1e-2) {
                return Err(Error::InvalidInput(format!(
                    "{name} tolerance {v} must lie in (0, 1e-2)"
                )));
            }
        }
        Ok(Tolerances { zero, cluster })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let l = Limits::default().with_overrides("exact=24, spectral=16").unwrap();
        assert_eq!(l.full_complex, 24);
        assert_eq!(l.single_degree, 24);
        assert_eq!(l.spectral, 16);
        assert!(Limits::default().with_overrides("bogus=3").is_err());
        assert!(Limits::default().with_overrides("spectral=0").is_err());
        assert!(Limits::default().with_overrides("enum").is_err());
    }

    #[test]
    fn tolerance_range() {
        assert!(Tolerances::new(1e-8, 1e-8).is_ok());
        assert!(Tolerances::new(0.0, 1e-8).is_err());
        assert!(Tolerances::new(1e-8, 0.5).is_err());
    }
}
