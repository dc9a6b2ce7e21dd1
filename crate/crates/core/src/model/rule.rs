use std::fmt::Write as _;

use crate::model::{FeatureSpace, Outcome};
use crate::{Error, Result, Tournament};

/// A strict complete social rule: a tournament on the outcomes of a feature space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialRule {
    space: FeatureSpace,
    tournament: Tournament,
}

impl SocialRule {
    pub fn new(space: FeatureSpace, tournament: Tournament) -> Result<Self> {
        if tournament.size() != space.size() {
            return Err(Error::SizeMismatch { expected: space.size(), got: tournament.size() });
        }
        Ok(SocialRule { space, tournament })
    }

    /// Orients every pair with `x_beats_y`, queried once per pair with `x < y`.
    pub fn from_fn<F: FnMut(Outcome, Outcome) -> bool>(space: FeatureSpace, mut x_beats_y: F) -> Self {
        let tournament = Tournament::from_fn(space.size(), |i, j| x_beats_y(Outcome(i), Outcome(j)));
        SocialRule { space, tournament }
    }

    pub fn space(&self) -> &FeatureSpace {
        &self.space
    }

    pub fn tournament(&self) -> &Tournament {
        &self.tournament
    }

    /// `x ≻ y`.
    #[inline]
    pub fn prefers(&self, x: Outcome, y: Outcome) -> bool {
        self.tournament.beats(x.0, y.0)
    }

    /// Every `w` with `w ≻ x`.
    pub fn dominators(&self, x: Outcome) -> impl Iterator<Item = Outcome> + '_ {
        self.tournament.dominators_of(x.0).map(Outcome)
    }

    pub fn score(&self, x: Outcome) -> usize {
        self.tournament.score(x.0)
    }

    /// Parses the text rule format: a `features: m1 ... mn` header followed
    /// by `M` rows of `M` characters (`1` where the row outcome beats the
    /// column outcome, `0` otherwise, `-` on the diagonal). Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_limit(text, FeatureSpace::MAX_OUTCOMES)
    }

    /// As [`SocialRule::parse`], rejecting spaces with more than `max_outcomes` outcomes.
    pub fn parse_with_limit(text: &str, max_outcomes: usize) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, message: String| Error::Parse { line, message };

        let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `features:` header".into()))?;
        let counts_text = header
            .strip_prefix("features:")
            .ok_or_else(|| err(hline, format!("expected `features: m1 m2 ...`, found {header:?}")))?;
        let counts = counts_text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(hline, format!("bad value count {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let size = counts.iter().try_fold(1usize, |a, &c| a.checked_mul(c));
        if let Some(size) = size {
            if size > max_outcomes {
                return Err(Error::LimitExceeded { what: "outcome count", value: size, limit: max_outcomes });
            }
        }
        let space = FeatureSpace::new(&counts).map_err(|e| err(hline, e.to_string()))?;
        let m = space.size();

        let mut rows: Vec<(usize, Vec<u8>)> = Vec::with_capacity(m);
        for (ln, row) in lines {
            if rows.len() == m {
                return Err(err(ln, format!("more than {m} matrix rows")));
            }
            let bytes = row.as_bytes().to_vec();
            if bytes.len() != m {
                return Err(err(ln, format!("row has {} entries, expected {m}", bytes.len())));
            }
            rows.push((ln, bytes));
        }
        if rows.len() != m {
            let last = rows.last().map_or(hline, |r| r.0);
            return Err(err(last, format!("found {} matrix rows, expected {m}", rows.len())));
        }

        let mut tournament = Tournament::empty(m);
        for (i, (ln, row)) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                match (i == j, c) {
                    (true, b'-') => {}
                    (true, _) => return Err(err(*ln, format!("diagonal entry {i} must be '-'"))),
                    (false, b'0' | b'1') => {
                        let mirror = rows[j].1[i];
                        if (c == b'1') == (mirror == b'1') || !matches!(mirror, b'0' | b'1') {
                            return Err(err(
                                *ln,
                                format!("entries ({i},{j}) and ({j},{i}) must be one '1' and one '0'"),
                            ));
                        }
                        if c == b'1' {
                            tournament.set(i, j);
                        }
                    }
                    (false, other) => {
                        return Err(err(*ln, format!("unexpected character {:?} at column {j}", other as char)))
                    }
                }
            }
        }
        Ok(SocialRule { space, tournament })
    }

    /// Canonical text form; `parse(serialize(r)) == r`.
    pub fn serialize(&self) -> String {
        let m = self.space.size();
        let mut out = String::with_capacity(m * (m + 1) + 32);
        out.push_str("features:");
        for c in self.space.counts() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
        for i in 0..m {
            for j in 0..m {
                out.push(if i == j {
                    '-'
                } else if self.tournament.beats(i, j) {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_rule() {
        let r = SocialRule::parse("features: 2\n-1\n0-\n").unwrap();
        assert!(r.prefers(Outcome(0), Outcome(1)));
        assert_eq!(r.serialize(), "features: 2\n-1\n0-\n");
    }

    #[test]
    fn three_cycle_rule() {
        let text = "# 0 > 1 > 2 > 0\nfeatures: 3\n\n-10\n0-1\n10-\n";
        let r = SocialRule::parse(text).unwrap();
        assert!(r.prefers(Outcome(0), Outcome(1)));
        assert!(r.prefers(Outcome(1), Outcome(2)));
        assert!(r.prefers(Outcome(2), Outcome(0)));
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", 1),
            ("features 2\n-1\n0-\n", 1),
            ("features: 2 x\n-1\n0-\n", 1),
            ("features: 1\n-\n", 1),
            ("features: 2\n-1\n1-\n", 2),
            ("features: 2\n-0\n0-\n", 2),
            ("features: 2\n11\n0-\n", 2),
            ("features: 2\n-1\n", 2),
            ("features: 2\n-1\n0-\n-1\n", 4),
            ("features: 2\n-1x\n0-\n", 2),
            ("features: 3\n-1?\n0-1\n?0-\n", 2),
        ];
        for (text, line) in cases {
            match SocialRule::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(SocialRule::parse_with_limit("features: 4 4\n", 8), Err(Error::LimitExceeded { .. })));
    }

    proptest! {
        #[test]
        fn serialize_round_trips(counts in proptest::collection::vec(2usize..4, 1..4), seed in any::<u64>()) {
            let space = FeatureSpace::new(&counts).unwrap();
            let mut state = seed | 1;
            let rule = SocialRule::from_fn(space, |_, _| {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                state & 1 == 1
            });
            let text = rule.serialize();
            let back = SocialRule::parse(&text).unwrap();
            prop_assert_eq!(&back, &rule);
            prop_assert_eq!(back.serialize(), text);
        }
    }
}
