/// A tournament stored as packed bit rows.
///
/// Row `i` holds the nodes dominated by `i`; the transposed rows hold the
/// nodes dominating `i`, so both directions scan in `O(M / 64)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    size: usize,
    words: usize,
    beats: Vec<u64>,
    beaten_by: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Tournament({})", self.size)?;
        for i in 0..self.size {
            let row: String = (0..self.size)
                .map(|j| {
                    if i == j {
                        '-'
                    } else if self.beats(i, j) {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl Tournament {
    /// Builds a tournament from an orientation of each unordered pair:
    /// `i_beats_j(i, j)` is queried once for every `i < j`.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(size: usize, mut i_beats_j: F) -> Self {
        let mut t = Self::empty(size);
        for i in 0..size {
            for j in i + 1..size {
                if i_beats_j(i, j) {
                    t.set(i, j);
                } else {
                    t.set(j, i);
                }
            }
        }
        t
    }

    /// Transitive tournament in which `order[0]` beats everything, `order[1]`
    /// beats everything but `order[0]`, and so on.
    pub fn transitive(order: &[usize]) -> Self {
        let mut rank = vec![0; order.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        Self::from_fn(order.len(), |i, j| rank[i] < rank[j])
    }

    pub(crate) fn empty(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        Tournament { size, words, beats: vec![0; size * words], beaten_by: vec![0; size * words] }
    }

    /// Orients the pair `{i, j}` as `i -> j`, overwriting any previous arc.
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        let w = self.words;
        self.beats[i * w + j / 64] |= 1 << (j % 64);
        self.beaten_by[j * w + i / 64] |= 1 << (i % 64);
        self.beats[j * w + i / 64] &= !(1 << (i % 64));
        self.beaten_by[i * w + j / 64] &= !(1 << (j % 64));
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.beats[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Out-degree of `i`.
    pub fn score(&self, i: usize) -> usize {
        self.beats_row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn scores(&self) -> Vec<usize> {
        (0..self.size).map(|i| self.score(i)).collect()
    }

    pub(crate) fn beats_row(&self, i: usize) -> &[u64] {
        &self.beats[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn beaten_by_row(&self, i: usize) -> &[u64] {
        &self.beaten_by[i * self.words..(i + 1) * self.words]
    }

    /// Nodes dominated by `i`.
    pub fn dominated_by(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.beats_row(i))
    }

    /// Nodes dominating `i`.
    pub fn dominators_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.beaten_by_row(i))
    }

    /// Nodes dominating both `i` and `j`.
    pub fn common_dominators(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        let (a, b) = (self.beaten_by_row(i), self.beaten_by_row(j));
        a.iter().zip(b).enumerate().flat_map(|(k, (&x, &y))| word_bits(x & y).map(move |bit| k * 64 + bit))
    }

    /// Sub-tournament induced on `nodes`; node `k` of the result is `nodes[k]`.
    pub fn induced(&self, nodes: &[usize]) -> Tournament {
        Tournament::from_fn(nodes.len(), |a, b| self.beats(nodes[a], nodes[b]))
    }

    /// Checks irreflexivity and that each pair carries exactly one arc.
    pub fn is_valid(&self) -> bool {
        (0..self.size).all(|i| !self.beats(i, i) && (i + 1..self.size).all(|j| self.beats(i, j) != self.beats(j, i)))
            && (0..self.size).all(|i| {
                (0..self.size).all(|j| self.beats(i, j) == ((self.beaten_by_row(j)[i / 64] >> (i % 64)) & 1 == 1))
            })
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| word_bits(w).map(move |b| k * 64 + b))
}

fn word_bits(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_keeps_both_views_consistent() {
        let mut t = Tournament::from_fn(130, |i, j| (i * 7 + j * 3) % 5 < 2);
        assert!(t.is_valid());
        t.set(129, 0);
        t.set(0, 129);
        assert!(t.is_valid());
        assert!(t.beats(0, 129));
        assert_eq!(t.scores().iter().sum::<usize>(), 130 * 129 / 2);
        assert!(t.dominators_of(129).any(|i| i == 0));
    }

    #[test]
    fn transitive_order() {
        let t = Tournament::transitive(&[2, 0, 1]);
        assert!(t.beats(2, 0) && t.beats(2, 1) && t.beats(0, 1));
        assert_eq!(t.scores(), vec![1, 0, 2]);
    }
}
