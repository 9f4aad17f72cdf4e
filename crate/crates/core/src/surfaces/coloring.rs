use alloc::vec::Vec;
use core::fmt;

/// Colors `u_f` indexed by face id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(Vec<u32>);

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        Coloring(colors)
    }

    pub fn zeros(n: usize) -> Self {
        Coloring(alloc::vec![0; n])
    }

    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_color(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Least even number `>=` the max color.
    pub fn m_even(&self) -> u32 {
        let m = self.max_color();
        m + m % 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&u| u == 0)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u)?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Coloring {
    fn from(v: Vec<u32>) -> Self {
        Coloring(v)
    }
}
