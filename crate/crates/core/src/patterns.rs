//! Dense ranking, order-isomorphic containment and preferential arrangements.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::binomial;
use crate::word::{Letter, LetterPermutation, Pattern, Word};

/// Largest pattern length [`enumerate_preferential_arrangements`] will list.
pub const MAX_ENUMERATED_LENGTH: usize = 8;

/// Replaces each letter by its dense rank among the distinct letters used.
///
/// `571` becomes `231`, `373` becomes `121`.
pub fn dense_rank(letters: &[Letter]) -> Pattern {
    let mut present = [false; 256];
    for &l in letters {
        present[l as usize] = true;
    }
    let mut rank = [0 as Letter; 256];
    let mut next = 0;
    for (value, &p) in present.iter().enumerate() {
        if p {
            next += 1;
            rank[value] = next;
        }
    }
    Pattern::new_unchecked(letters.iter().map(|&l| rank[l as usize]).collect())
}

/// True iff some subsequence of `word` has dense rank equal to `pattern`.
///
/// The empty pattern is contained in every word.
pub fn contains_pattern(word: &[Letter], pattern: &Pattern) -> bool {
    Matcher::new(word, pattern).run()
}

/// Positions (0-based, increasing) of one occurrence of `pattern` in `word`.
pub fn find_embedding(word: &[Letter], pattern: &Pattern) -> Option<Vec<usize>> {
    let mut matcher = Matcher::new(word, pattern);
    matcher.run().then_some(matcher.picks)
}

/// Backtracking over pattern positions with a partial rank -> letter assignment.
///
/// Two dominance rules keep the search small: once a rank has a value, the
/// earliest matching letter is always the best choice; when assigning a fresh
/// rank, only the first occurrence of each distinct candidate value is tried.
struct Matcher<'a> {
    word: &'a [Letter],
    pattern: &'a [Letter],
    // assignment[r] is the letter bound to rank r, 0 when unbound
    assignment: Vec<Letter>,
    picks: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(word: &'a [Letter], pattern: &'a Pattern) -> Self {
        let pattern = pattern.letters();
        Matcher {
            word,
            pattern,
            assignment: vec![0; pattern.len() + 2],
            picks: vec![0; pattern.len()],
        }
    }

    fn run(&mut self) -> bool {
        self.search(0, 0)
    }

    fn search(&mut self, pos: usize, start: usize) -> bool {
        let k = self.pattern.len();
        if pos == k {
            return true;
        }
        let remaining = k - pos;
        if self.word.len() < start + remaining {
            return false;
        }
        let last = self.word.len() - remaining;
        let rank = self.pattern[pos] as usize;

        let bound = self.assignment[rank];
        if bound != 0 {
            return match (start..=last).find(|&i| self.word[i] == bound) {
                Some(i) => {
                    self.picks[pos] = i;
                    self.search(pos + 1, i + 1)
                }
                None => false,
            };
        }

        let lower = self.assignment[..rank].iter().copied().max().unwrap_or(0);
        let upper = self.assignment[rank + 1..]
            .iter()
            .copied()
            .filter(|&v| v != 0)
            .min()
            .map_or(u16::MAX, u16::from);
        let mut tried = [0u64; 4];
        for i in start..=last {
            let c = self.word[i];
            if c <= lower || u16::from(c) >= upper {
                continue;
            }
            let (slot, bit) = (c as usize / 64, 1u64 << (c % 64));
            if tried[slot] & bit != 0 {
                continue;
            }
            tried[slot] |= bit;
            self.assignment[rank] = c;
            self.picks[pos] = i;
            if self.search(pos + 1, i + 1) {
                return true;
            }
        }
        self.assignment[rank] = 0;
        false
    }
}

/// All preferential arrangements of length `k` in lexicographic order.
pub fn enumerate_preferential_arrangements(k: usize) -> Result<Vec<Pattern>> {
    if k > MAX_ENUMERATED_LENGTH {
        return Err(Error::SizeCap {
            k,
            cap: MAX_ENUMERATED_LENGTH,
        });
    }

    fn extend(k: usize, current: &mut Vec<Letter>, used: &mut [u32], out: &mut Vec<Pattern>) {
        let max = used.iter().rposition(|&c| c > 0).unwrap_or(0);
        let gaps = (1..max).filter(|&v| used[v] == 0).count();
        if gaps > k - current.len() {
            return;
        }
        if current.len() == k {
            out.push(Pattern::new_unchecked(current.clone()));
            return;
        }
        for v in 1..=k {
            used[v] += 1;
            current.push(v as Letter);
            extend(k, current, used, out);
            current.pop();
            used[v] -= 1;
        }
    }

    let mut out = Vec::new();
    extend(k, &mut Vec::with_capacity(k), &mut vec![0; k + 1], &mut out);
    Ok(out)
}

/// Ordered Bell number: `a(0) = 1`, `a(k) = sum_{j=1..k} C(k, j) a(k - j)`.
pub fn fubini(k: usize) -> BigUint {
    let mut table: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=k {
        let next = (1..=m).map(|j| binomial(m as u64, j as u64) * &table[m - j]).sum();
        table.push(next);
    }
    table.pop().expect("table is never empty")
}

/// Renames letters in order of first occurrence, so the first letter is 1,
/// the next new letter is 2, and so on.
///
/// Two words differ by a letter permutation iff their canonical forms agree.
pub fn relabel_canonical(word: &Word) -> Word {
    let mut map = [0 as Letter; 256];
    let mut next = 0;
    let letters = word
        .letters()
        .iter()
        .map(|&l| {
            if map[l as usize] == 0 {
                next += 1;
                map[l as usize] = next;
            }
            map[l as usize]
        })
        .collect();
    Word::new(letters, word.alphabet_size()).expect("relabeling stays inside the alphabet")
}

/// Pointwise relabeling of `word` by `sigma`.
pub fn apply_letter_permutation(word: &Word, sigma: &LetterPermutation) -> Result<Word> {
    let d = sigma.alphabet_size();
    if word.alphabet_size() > d {
        return Err(Error::InvalidArgument(format!(
            "permutation on {d} letters cannot act on a word over {} letters",
            word.alphabet_size()
        )));
    }
    let letters = word.letters().iter().map(|&l| sigma.image(l)).collect();
    Word::new(letters, d)
}


#[cfg(test)]
mod tests {
    use super::oracle::contains_by_subsets;
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn dense_rank_examples() {
        assert_eq!(dense_rank(&[5, 7, 1]), p("231"));
        assert_eq!(dense_rank(&[3, 7, 3]), p("121"));
        assert_eq!(dense_rank(&[1, 1, 1]), p("111"));
        assert_eq!(dense_rank(&[]), p(""));
    }

    #[test]
    fn containment_examples() {
        let word = w("5371473");
        assert!(contains_pattern(word.letters(), &p("231")));
        assert!(contains_pattern(word.letters(), &p("121")));
        assert!(!contains_pattern(w("111111").letters(), &p("123")));
        assert!(contains_pattern(w("2").letters(), &p("")));
        for pat in enumerate_preferential_arrangements(4).unwrap() {
            assert!(contains_pattern(pat.letters(), &pat));
        }
    }

    #[test]
    fn embedding_examples() {
        let word = w("1213121");
        let hit = find_embedding(word.letters(), &p("123")).unwrap();
        assert_eq!(dense_rank(word.subsequence(&hit).letters()), p("123"));
        // 1-based (1, 2, 4)
        assert_eq!(hit, vec![0, 1, 3]);
        assert_eq!(find_embedding(w("121").letters(), &p("123")), None);
        assert_eq!(find_embedding(w("2413").letters(), &p("2413")), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn arrangements_small() {
        let two: Vec<String> = enumerate_preferential_arrangements(2)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(two, ["11", "12", "21"]);

        let three: Vec<String> = enumerate_preferential_arrangements(3)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            three,
            ["111", "112", "121", "122", "123", "132", "211", "212", "213", "221", "231", "312", "321"]
        );
        let mut listed = vec![
            "111", "112", "121", "211", "122", "212", "221", "123", "132", "213", "231", "312", "321",
        ];
        listed.sort_unstable();
        assert_eq!(three, listed);

        assert_eq!(enumerate_preferential_arrangements(1).unwrap(), vec![p("1")]);
        assert_eq!(enumerate_preferential_arrangements(4).unwrap().len(), 75);
        assert!(matches!(
            enumerate_preferential_arrangements(9),
            Err(Error::SizeCap { k: 9, cap: 8 })
        ));
    }

    #[test]
    fn fubini_values() {
        let values: Vec<u64> = (0..=4).map(|k| fubini(k).try_into().unwrap()).collect();
        assert_eq!(values, [1, 1, 3, 13, 75]);
        assert_eq!(fubini(5), BigUint::from(541u32));
        for k in 0..=6 {
            assert_eq!(
                BigUint::from(enumerate_preferential_arrangements(k).unwrap().len()),
                fubini(k)
            );
        }
    }

    #[test]
    fn canonical_relabeling() {
        assert_eq!(relabel_canonical(&w("2123212")), w("1213121"));
        assert_eq!(relabel_canonical(&w("1213121")), w("1213121"));
        assert_eq!(relabel_canonical(&w("333")).letters(), &[1, 1, 1]);
    }

    #[test]
    fn permutation_application() {
        let swap = LetterPermutation::new(vec![2, 1]).unwrap();
        assert_eq!(apply_letter_permutation(&w("121"), &swap).unwrap(), w("212"));
        let id = LetterPermutation::identity(3);
        assert_eq!(apply_letter_permutation(&w("1213121"), &id).unwrap(), w("1213121"));
        let cycle = LetterPermutation::new(vec![3, 1, 2]).unwrap();
        assert_eq!(apply_letter_permutation(&w("123"), &cycle).unwrap(), w("312"));
        assert!(apply_letter_permutation(&w("123"), &swap).is_err());
    }

    #[test]
    fn isomorphism_classes_have_size_six() {
        // every ternary word of length 5 using all three letters
        let mut classes = std::collections::BTreeMap::<Word, usize>::new();
        for code in 0..3usize.pow(5) {
            let letters: Vec<Letter> = (0..5).map(|i| (code / 3usize.pow(i) % 3) as Letter + 1).collect();
            let word = Word::new(letters, 3).unwrap();
            let used = (1..=3).filter(|l| word.letters().contains(l)).count();
            if used == 3 {
                *classes.entry(relabel_canonical(&word)).or_default() += 1;
            }
        }
        assert!(classes.values().all(|&size| size == 6));
    }

    fn small_word() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(1u8..=5, 0..=10)
    }

    fn small_pattern() -> impl Strategy<Value = Pattern> {
        prop::collection::vec(1u8..=4, 0..=4).prop_map(|v| dense_rank(&v))
    }

    proptest! {
        #[test]
        fn dense_rank_is_idempotent(word in small_word()) {
            let once = dense_rank(&word);
            prop_assert_eq!(dense_rank(once.letters()), once.clone());
            prop_assert_eq!(once.len(), word.len());
        }

        #[test]
        fn dense_rank_preserves_order(word in small_word()) {
            let ranked = dense_rank(&word);
            let r = ranked.letters();
            for i in 0..word.len() {
                for j in 0..word.len() {
                    prop_assert_eq!(word[i].cmp(&word[j]), r[i].cmp(&r[j]));
                }
            }
        }

        #[test]
        fn containment_agrees_with_subset_oracle(word in small_word(), pattern in small_pattern()) {
            let fast = contains_pattern(&word, &pattern);
            prop_assert_eq!(fast, contains_by_subsets(&word, &pattern));
            match find_embedding(&word, &pattern) {
                Some(indices) => {
                    prop_assert!(fast);
                    prop_assert!(indices.windows(2).all(|w| w[0] < w[1]));
                    let sub: Vec<Letter> = indices.iter().map(|&i| word[i]).collect();
                    prop_assert_eq!(dense_rank(&sub), pattern);
                }
                None => prop_assert!(!fast),
            }
        }

        #[test]
        fn increasing_relabel_preserves_containment(
            word in small_word(),
            pattern in small_pattern(),
            shift in 0u8..50,
            stretch in 1u8..5,
        ) {
            let relabeled: Vec<Letter> = word.iter().map(|&l| l * stretch + shift).collect();
            prop_assert_eq!(dense_rank(&relabeled), dense_rank(&word));
            prop_assert_eq!(contains_pattern(&relabeled, &pattern), contains_pattern(&word, &pattern));
        }
    }
}
