use std::fmt;

/// `σ^r τ^s` in `D_n = ⟨σ, τ | σ^n = τ^2 = e, στσ = τ⟩`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    n: u64,
    r: u64,
    s: u8,
}

impl GroupElement {
    pub fn new(n: u64, r: i64, s: u8) -> Self {
        assert!(n >= 1 && s < 2, "invalid dihedral element");
        Self { n, r: r.rem_euclid(n as i64) as u64, s }
    }

    pub fn identity(n: u64) -> Self {
        Self::new(n, 0, 0)
    }

    pub fn sigma(n: u64) -> Self {
        Self::new(n, 1, 0)
    }

    pub fn tau(n: u64) -> Self {
        Self::new(n, 0, 1)
    }

    pub fn rotation(n: u64, r: i64) -> Self {
        Self::new(n, r, 0)
    }

    pub fn reflection(n: u64, r: i64) -> Self {
        Self::new(n, r, 1)
    }

    /// Rotations first, then reflections, each by increasing `r`.
    pub fn all(n: u64) -> Vec<Self> {
        (0..2u8).flat_map(|s| (0..n as i64).map(move |r| Self::new(n, r, s))).collect()
    }

    pub fn order_of_group(n: u64) -> u64 {
        2 * n
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "elements of different dihedral groups");
        let r2 = if self.s == 0 { o.r as i64 } else { -(o.r as i64) };
        Self::new(self.n, self.r as i64 + r2, self.s ^ o.s)
    }

    pub fn inv(&self) -> Self {
        if self.s == 0 {
            Self::new(self.n, -(self.r as i64), 0)
        } else {
            *self
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r, self.s) {
            (0, 0) => write!(f, "e"),
            (r, 0) => write!(f, "σ^{r}"),
            (0, _) => write!(f, "τ"),
            (r, _) => write!(f, "σ^{r}τ"),
        }
    }
}
