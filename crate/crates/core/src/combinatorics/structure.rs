use super::pattern::CyclicPattern;
use serde::Serialize;

/// Whether no pair of points `x < y` has `θ(x) < x` and `θ(y) > y`.
pub fn is_convergent(pattern: &CyclicPattern) -> bool {
    let n = pattern.period();
    let mut seen_left_mover = false;
    for j in 1..=n {
        let t = pattern.apply(j);
        if t > j && seen_left_mover {
            return false;
        }
        if t < j {
            seen_left_mover = true;
        }
    }
    true
}

/// Number of turning points of the P-linear map, i.e. laps minus one.
pub fn modality(pattern: &CyclicPattern) -> usize {
    let v = pattern.one_line();
    v.windows(3)
        .filter(|w| (w[0] < w[1]) != (w[1] < w[2]))
        .count()
}

/// Partition of `{1..n}` into consecutive blocks of equal size permuted by
/// the pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    pub block_size: usize,
    pub blocks: Vec<Vec<usize>>,
    /// How the blocks themselves are permuted.
    #[serde(serialize_with = "serialize_pattern")]
    pub quotient: CyclicPattern,
}

fn serialize_pattern<S: serde::Serializer>(p: &CyclicPattern, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn blocks_of_size(pattern: &CyclicPattern, d: usize) -> Option<BlockStructure> {
    let n = pattern.period();
    let k = n / d;
    let mut quotient = vec![0; k];
    for b in 0..k {
        let target = (pattern.apply(b * d + 1) - 1) / d;
        for j in b * d + 1..=(b + 1) * d {
            if (pattern.apply(j) - 1) / d != target {
                return None;
            }
        }
        quotient[b] = target + 1;
    }
    let blocks = (0..k).map(|b| (b * d + 1..=(b + 1) * d).collect()).collect();
    Some(BlockStructure {
        block_size: d,
        blocks,
        quotient: CyclicPattern::new(&quotient).expect("blocks of a cycle are cyclically permuted"),
    })
}

/// The coarsest nontrivial block structure (fewest blocks, at least two), if any.
pub fn has_block_structure(pattern: &CyclicPattern) -> Option<BlockStructure> {
    let n = pattern.period();
    (2..n)
        .rev()
        .filter(|d| n % d == 0)
        .find_map(|d| blocks_of_size(pattern, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::overtwist::bimodal_overtwist;

    fn pat(v: &[usize]) -> CyclicPattern {
        CyclicPattern::new(v).unwrap()
    }

    #[test]
    fn convergence() {
        assert!(is_convergent(&pat(&[2, 3, 1])));
        assert!(is_convergent(&pat(&[2, 1])));
        // 2 moves left, then 3 moves right
        assert!(!is_convergent(&pat(&[3, 1, 4, 2])));
    }

    #[test]
    fn blocks() {
        let b = has_block_structure(&pat(&[3, 4, 2, 1])).unwrap();
        assert_eq!(b.blocks, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(b.quotient.one_line(), vec![2, 1]);
        assert!(has_block_structure(&pat(&[2, 3, 1])).is_none());
        assert!(has_block_structure(&bimodal_overtwist(3, 3, 11).unwrap()).is_none());
    }

    #[test]
    fn coarsest_blocks() {
        // 1 -> 5 -> 3 -> 7 -> 2 -> 6 -> 4 -> 8 -> 1
        let p = pat(&[5, 6, 7, 8, 3, 4, 2, 1]);
        assert!(blocks_of_size(&p, 2).is_some());
        assert_eq!(has_block_structure(&p).unwrap().block_size, 4);
    }

    #[test]
    fn modality_counts_turns() {
        assert_eq!(modality(&bimodal_overtwist(3, 3, 11).unwrap()), 2);
        assert_eq!(modality(&pat(&[2, 3, 1])), 1);
        assert_eq!(modality(&pat(&[2, 1])), 0);
    }
}
