//! Counting helpers shared by the diagram, module and crystal layers.

/// `m! / (c₀! c₁! ⋯)`, or 0 when the counts do not sum to `m`.
pub fn multinomial(m: usize, counts: &[usize]) -> u128 {
    if counts.iter().sum::<usize>() != m {
        return 0;
    }
    let mut result: u128 = 1;
    let mut placed = 0u128;
    for &c in counts {
        for k in 1..=c as u128 {
            placed += 1;
            result = result * placed / k;
        }
    }
    result
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    multinomial(n, &[k, n - k])
}

/// All vectors `(c₀,…,c_{parts-1})` of nonnegative integers summing to `total`, in
/// descending lexicographic order. This is the order of their canonical words
/// `0^{c₀} 1^{c₁} ⋯` ascending.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in (0..=remaining).rev() {
            prefix.push(c);
            go(remaining - c, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// All words of length `len` over `0..alphabet`, in lexicographic order.
pub fn words(len: usize, alphabet: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet).map(move |a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

/// Letter counts of a word over `0..alphabet`.
pub fn letter_counts(word: &[usize], alphabet: usize) -> Vec<usize> {
    let mut counts = vec![0; alphabet];
    for &a in word {
        counts[a] += 1;
    }
    counts
}

/// The weakly increasing word with `counts[j]` copies of letter `j`.
pub fn sorted_word(counts: &[usize]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat(j).take(c))
        .collect()
}

/// Renders a word compactly: digits run together when every letter is below ten,
/// comma-separated otherwise.
pub fn word_key(word: &[usize]) -> String {
    if word.iter().all(|&a| a < 10) {
        word.iter().map(|a| a.to_string()).collect()
    } else {
        word.iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(5, &[1, 2, 2]), 30);
        assert_eq!(multinomial(4, &[2, 2]), 6);
        assert_eq!(multinomial(0, &[0, 0]), 1);
        assert_eq!(multinomial(3, &[1, 1]), 0);
        assert_eq!(binomial(9, 3), 84);
    }

    #[test]
    fn compositions_in_canonical_order() {
        assert_eq!(
            compositions(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        let words: Vec<_> = compositions(3, 3).iter().map(|c| sorted_word(c)).collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
    }

    #[test]
    fn words_are_lexicographic() {
        let w = words(2, 3);
        assert_eq!(w.len(), 9);
        assert_eq!(w[0], vec![0, 0]);
        assert_eq!(w[1], vec![0, 1]);
        assert_eq!(w[8], vec![2, 2]);
        assert_eq!(words(0, 3), vec![Vec::<usize>::new()]);
    }
}
