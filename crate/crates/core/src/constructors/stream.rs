use std::fmt;

use crate::basis::Presentation;

/// A finite bitstring that is either partial (`σ⊥`, may still grow) or
/// total (`σ`, ended).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stream {
    pub bits: Vec<bool>,
    pub total: bool,
}

impl Stream {
    pub fn partial(s: &str) -> Stream {
        Stream {
            bits: s.chars().map(|c| c == '1').collect(),
            total: false,
        }
    }

    pub fn total(s: &str) -> Stream {
        Stream {
            bits: s.chars().map(|c| c == '1').collect(),
            total: true,
        }
    }

    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// `σ⊥ ⊑ τ` iff σ is a prefix of τ; a total string is below itself only.
    pub fn leq(&self, other: &Stream) -> bool {
        if self.total {
            self == other
        } else {
            other.bits.len() >= self.bits.len() && other.bits[..self.bits.len()] == self.bits[..]
        }
    }

    pub fn lub(&self, other: &Stream) -> Option<Stream> {
        if self.leq(other) {
            Some(other.clone())
        } else if other.leq(self) {
            Some(self.clone())
        } else {
            None
        }
    }

    pub fn prepend(&self, prefix: &str) -> Stream {
        let mut bits: Vec<bool> = prefix.chars().map(|c| c == '1').collect();
        bits.extend(&self.bits);
        Stream {
            bits,
            total: self.total,
        }
    }

    /// Parses `σ⊥`, `⊥`, `σ` or `ε`.
    pub fn parse(label: &str) -> Option<Stream> {
        let (body, total) = match label.strip_suffix('⊥') {
            Some(b) => (b, false),
            None if label == "ε" => ("", true),
            None => (label, true),
        };
        if body.is_empty() && total && label != "ε" {
            return None;
        }
        body.chars().all(|c| c == '0' || c == '1').then(|| Stream {
            bits: body.chars().map(|c| c == '1').collect(),
            total,
        })
    }
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.total, self.bits.is_empty()) {
            (true, true) => write!(f, "ε"),
            (true, false) => write!(f, "{}", self.bit_string()),
            (false, _) => write!(f, "{}⊥", self.bit_string()),
        }
    }
}

/// The domain of finite and infinite bitstrings presented by length: the
/// block for length `n` starts at `2(2ⁿ−1)` and lists the `2ⁿ` partial
/// strings, then the `2ⁿ` total ones, in binary order.
#[derive(Debug, Clone, Copy, Default)]
pub struct StreamPresentation;

impl StreamPresentation {
    pub fn decode(i: usize) -> Stream {
        let mut n = 0;
        while 2 * ((1usize << (n + 1)) - 1) <= i {
            n += 1;
        }
        let offset = i - 2 * ((1usize << n) - 1);
        let total = offset >= 1 << n;
        let code = offset % (1 << n);
        let bits = (0..n).map(|k| code >> (n - 1 - k) & 1 == 1).collect();
        Stream { bits, total }
    }

    pub fn index_of(s: &Stream) -> usize {
        let n = s.bits.len();
        let code = s.bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        2 * ((1usize << n) - 1) + if s.total { 1 << n } else { 0 } + code
    }
}

impl Presentation for StreamPresentation {
    fn len(&self) -> Option<usize> {
        None
    }

    fn label(&self, i: usize) -> String {
        Self::decode(i).to_string()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        Self::decode(i).leq(&Self::decode(j))
    }

    fn lub_index(&self, i: usize, j: usize) -> Option<usize> {
        Self::decode(i)
            .lub(&Self::decode(j))
            .map(|s| Self::index_of(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_by_length() {
        let labels: Vec<String> = (0..10).map(|i| StreamPresentation.label(i)).collect();
        assert_eq!(
            labels,
            vec!["⊥", "ε", "0⊥", "1⊥", "0", "1", "00⊥", "01⊥", "10⊥", "11⊥"]
        );
        for i in 0..500 {
            assert_eq!(
                StreamPresentation::index_of(&StreamPresentation::decode(i)),
                i
            );
            assert_eq!(
                Stream::parse(&StreamPresentation.label(i)),
                Some(StreamPresentation::decode(i))
            );
        }
    }

    #[test]
    fn order_and_lubs() {
        let p = StreamPresentation;
        let i = |s: &str| StreamPresentation::index_of(&Stream::parse(s).unwrap());
        assert!(p.leq(i("0⊥"), i("01")));
        assert!(!p.leq(i("01"), i("011⊥")));
        assert_eq!(p.lub_index(i("0⊥"), i("01⊥")), Some(i("01⊥")));
        assert_eq!(p.lub_index(i("0⊥"), i("1⊥")), None);
        assert_eq!(p.lub_index(0, i("ε")), Some(i("ε")));
        assert_eq!(Stream::partial("01").prepend("01").to_string(), "0101⊥");
    }
}
