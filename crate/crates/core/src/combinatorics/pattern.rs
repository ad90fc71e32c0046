use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("empty permutation")]
    Empty,
    #[error("value {value} out of range 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("value {0} appears more than once")]
    Repeated(usize),
    #[error("permutation is not a single cycle (orbit of 1 has length {orbit} < {n})")]
    NotCyclic { orbit: usize, n: usize },
    #[error("pattern of period {0} is too short; period at least 2 is required")]
    Degenerate(usize),
    #[error("cannot parse pattern {0:?}")]
    Syntax(String),
}

/// A cyclic permutation of `{1, ..., n}` recording how a periodic orbit
/// `x_1 < x_2 < ... < x_n` is permuted by the map.
///
/// The stored image is oriented: `image()[j - 1] = θ(j)`. Patterns proper are
/// considered up to the flip `j ↦ n + 1 - j`; use [`CyclicPattern::canonical`]
/// or [`CyclicPattern::same_pattern`] when orientation should be ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPattern {
    // zero-based images
    image: Vec<usize>,
}

impl CyclicPattern {
    /// Builds a pattern from one-line notation with values in `1..=n`.
    pub fn new(one_line: &[usize]) -> Result<Self, PatternError> {
        let n = one_line.len();
        if n == 0 {
            return Err(PatternError::Empty);
        }
        let mut seen = vec![false; n];
        for &v in one_line {
            if v == 0 || v > n {
                return Err(PatternError::OutOfRange { value: v, n });
            }
            if seen[v - 1] {
                return Err(PatternError::Repeated(v));
            }
            seen[v - 1] = true;
        }
        let image: Vec<usize> = one_line.iter().map(|v| v - 1).collect();
        let mut orbit = 1;
        let mut j = image[0];
        while j != 0 {
            j = image[j];
            orbit += 1;
        }
        if orbit != n {
            return Err(PatternError::NotCyclic { orbit, n });
        }
        Ok(Self { image })
    }

    /// Builds a pattern from cycle notation `(c_1, c_2, ..., c_n)`, meaning
    /// `c_1 ↦ c_2 ↦ ... ↦ c_n ↦ c_1`.
    pub fn from_cycle(cycle: &[usize]) -> Result<Self, PatternError> {
        let n = cycle.len();
        if n == 0 {
            return Err(PatternError::Empty);
        }
        let mut one_line = vec![0; n];
        for (i, &c) in cycle.iter().enumerate() {
            if c == 0 || c > n {
                return Err(PatternError::OutOfRange { value: c, n });
            }
            if one_line[c - 1] != 0 {
                return Err(PatternError::Repeated(c));
            }
            one_line[c - 1] = cycle[(i + 1) % n];
        }
        Self::new(&one_line)
    }

    /// Builds the pattern of a finite orbit given as points in orbit order
    /// (`points[i + 1]` is the image of `points[i]`, cyclically).
    pub fn from_orbit<T: Ord>(points: &[T]) -> Result<Self, PatternError> {
        let n = points.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| points[i].cmp(&points[j]));
        // rank[i] = position of points[i] in increasing order
        let mut rank = vec![0; n];
        for (pos, &i) in order.iter().enumerate() {
            rank[i] = pos;
        }
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(PatternError::Repeated(rank[w[1]] + 1));
            }
        }
        let mut one_line = vec![0; n];
        for i in 0..n {
            one_line[rank[i]] = rank[(i + 1) % n] + 1;
        }
        Self::new(&one_line)
    }

    pub fn period(&self) -> usize {
        self.image.len()
    }

    /// `θ(j)` for `j` in `1..=n`.
    pub fn apply(&self, j: usize) -> usize {
        self.image[j - 1] + 1
    }

    /// One-line notation with values in `1..=n`.
    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|v| v + 1).collect()
    }

    /// Zero-based images, `image()[i] = θ(i + 1) - 1`.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Cycle notation starting at 1.
    pub fn cycle(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.period());
        let mut j = 0;
        loop {
            out.push(j + 1);
            j = self.image[j];
            if j == 0 {
                break;
            }
        }
        out
    }

    /// The orientation-reversed permutation `j ↦ n + 1 - θ(n + 1 - j)`.
    pub fn flip(&self) -> Self {
        let n = self.period();
        let image = (0..n).map(|i| n - 1 - self.image[n - 1 - i]).collect();
        Self { image }
    }

    /// Lexicographically smaller of the permutation and its flip.
    pub fn canonical(&self) -> Self {
        let flipped = self.flip();
        if flipped.image < self.image {
            flipped
        } else {
            self.clone()
        }
    }

    /// Whether `self` is already its own canonical representative.
    pub fn is_canonical(&self) -> bool {
        self.flip().image >= self.image
    }

    /// Equality of patterns, ignoring orientation.
    pub fn same_pattern(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Requires period at least two, as all over-rotation computations do.
    pub fn ensure_nondegenerate(&self) -> Result<(), PatternError> {
        if self.period() < 2 {
            Err(PatternError::Degenerate(self.period()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for CyclicPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.image {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for CyclicPattern {
    type Err = PatternError;

    /// Accepts one-line notation `4,5,6,11,10,9,3,2,1,7,8` or cycle notation
    /// `(1,4,11,8,2,5,10,7,3,6,9)`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let (body, is_cycle) = match t.strip_prefix('(') {
            Some(rest) => match rest.strip_suffix(')') {
                Some(body) => (body, true),
                None => return Err(PatternError::Syntax(text.to_string())),
            },
            None => (t, false),
        };
        let values = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PatternError::Syntax(text.to_string()))?;
        if is_cycle {
            Self::from_cycle(&values)
        } else {
            Self::new(&values)
        }
    }
}
