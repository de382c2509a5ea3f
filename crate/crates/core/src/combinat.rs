//! Lyndon words, their standard bracketing, and necklace enumeration.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tensor::TensorElement;
use crate::word::{Letter, Word};

/// All Lyndon words of length `n` over `1..=d`, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(d: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<Letter> = vec![1];
    loop {
        if w.len() == n {
            out.push(Word::from_letters(&w));
        }
        // extend periodically to length n
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == d {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// One representative per cyclic class of words of length `n`: the
/// lexicographically least rotation. Generated in lexicographic order with
/// the Fredricksen–Kessler–Maiorana recursion.
pub fn necklaces(d: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || n == 0 {
        return out;
    }
    // a[0] = 1 seeds the recursion so that a[1] runs over 1..=d
    let mut a = vec![1 as Letter; n + 1];
    fn gen(t: usize, p: usize, n: usize, d: usize, a: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if t > n {
            if n.is_multiple_of(p) {
                out.push(Word::from_letters(&a[1..=n]));
            }
            return;
        }
        a[t] = a[t - p];
        gen(t + 1, p, n, d, a, out);
        for j in (a[t - p] as usize + 1)..=d {
            a[t] = j as Letter;
            gen(t + 1, t, n, d, a, out);
        }
    }
    gen(1, 1, n, d, &mut a, &mut out);
    out
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/n) Σ_{k | n} φ(k) d^{n/k}`.
pub fn necklace_count(d: u64, n: u64) -> u64 {
    assert!(n >= 1);
    let total: u64 = (1..=n)
        .filter(|k| n.is_multiple_of(*k))
        .map(|k| euler_phi(k) * d.pow((n / k) as u32))
        .sum();
    total / n
}

/// Witt's formula `(1/n) Σ_{k | n} μ(k) d^{n/k}`.
pub fn lyndon_count(d: u64, n: u64) -> u64 {
    assert!(n >= 1);
    let total: i64 = (1..=n)
        .filter(|k| n.is_multiple_of(*k))
        .map(|k| mobius(k) * d.pow((n / k) as u32) as i64)
        .sum();
    (total / n as i64) as u64
}

/// Standard factorization `w = u v` with `v` the longest proper Lyndon
/// suffix.
pub fn standard_factorization(w: &Word) -> Result<(Word, Word)> {
    if !w.is_lyndon() || w.len() < 2 {
        return Err(Error::NotLyndon(w.to_string()));
    }
    let k = (1..w.len())
        .find(|&k| w.suffix_from(k).is_lyndon())
        .expect("a letter suffix is always Lyndon");
    Ok((w.prefix(k), w.suffix_from(k)))
}

/// Lie polynomial `P_w` of a Lyndon word: `P_i = i` for letters and
/// `P_w = [P_u, P_v]` along the standard factorization.
pub fn lyndon_bracketing(w: &Word, d: usize) -> Result<TensorElement> {
    let mut cache = HashMap::new();
    lyndon_bracketing_cached(w, d, &mut cache)
}

/// As [`lyndon_bracketing`], sharing sub-bracketings through `cache`.
pub fn lyndon_bracketing_cached(w: &Word, d: usize, cache: &mut HashMap<Word, TensorElement>) -> Result<TensorElement> {
    w.validate(d)?;
    if !w.is_lyndon() {
        return Err(Error::NotLyndon(w.to_string()));
    }
    if let Some(p) = cache.get(w) {
        return Ok(p.clone());
    }
    let p = if w.len() == 1 {
        TensorElement::from_word(d, w.clone())
    } else {
        let (u, v) = standard_factorization(w)?;
        let pu = lyndon_bracketing_cached(&u, d, cache)?;
        let pv = lyndon_bracketing_cached(&v, d, cache)?;
        pu.bracket(&pv)?
    };
    cache.insert(w.clone(), p.clone());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 9).unwrap()
    }

    #[test]
    fn lyndon_examples() {
        assert_eq!(lyndon_words(2, 1), vec![w("1"), w("2")]);
        assert_eq!(lyndon_words(2, 4), vec![w("1112"), w("1122"), w("1222")]);
        assert_eq!(lyndon_words(3, 3).len(), 8);
    }

    #[test]
    fn lyndon_words_match_brute_force() {
        for (d, max_n) in [(2, 8), (3, 6), (4, 4)] {
            for n in 1..=max_n {
                let brute: Vec<Word> = Word::all(d, n).filter(Word::is_lyndon).collect();
                assert_eq!(lyndon_words(d, n), brute, "d={d} n={n}");
                assert_eq!(brute.len() as u64, lyndon_count(d as u64, n as u64));
            }
        }
    }

    #[test]
    fn lyndon_counts_match_logsignature_tables() {
        let d2: Vec<u64> = (1..=6).map(|n| lyndon_count(2, n)).collect();
        assert_eq!(d2, vec![2, 1, 2, 3, 6, 9]);
        let d3: Vec<u64> = (1..=6).map(|n| lyndon_count(3, n)).collect();
        assert_eq!(d3, vec![3, 3, 8, 18, 48, 116]);
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(necklaces(2, 2), vec![w("11"), w("12"), w("22")]);
        assert_eq!(necklaces(2, 6).len(), 14);
        assert_eq!(necklaces(3, 4).len(), 24);
    }

    #[test]
    fn necklaces_match_min_rotation_brute_force() {
        for (d, max_n) in [(2, 9), (3, 6), (4, 4), (5, 3)] {
            for n in 1..=max_n {
                let mut brute: Vec<Word> = Word::all(d, n).filter(|x| x.min_rotation() == *x).collect();
                brute.sort();
                assert_eq!(necklaces(d, n), brute, "d={d} n={n}");
                assert_eq!(brute.len() as u64, necklace_count(d as u64, n as u64));
            }
        }
    }

    #[test]
    fn necklace_counts_match_conjugation_columns() {
        let d2: Vec<u64> = (1..=10).map(|n| necklace_count(2, n)).collect();
        assert_eq!(d2, vec![2, 3, 4, 6, 8, 14, 20, 36, 60, 108]);
        let d6: Vec<u64> = (1..=4).map(|n| necklace_count(6, n)).collect();
        assert_eq!(d6, vec![6, 21, 76, 336]);
    }

    #[test]
    fn bracketing_examples() {
        let p12 = lyndon_bracketing(&w("12"), 2).unwrap();
        assert_eq!(p12, TensorElement::parse(2, "12 - 21").unwrap());
        let p112 = lyndon_bracketing(&w("112"), 2).unwrap();
        assert_eq!(p112, TensorElement::parse(2, "112 - 2*121 + 211").unwrap());
        assert!(matches!(lyndon_bracketing(&w("21"), 2), Err(Error::NotLyndon(_))));
        assert!(lyndon_bracketing(&Word::empty(), 2).is_err());
    }

    #[test]
    fn bracketing_leading_word_is_the_lyndon_word() {
        let mut cache = HashMap::new();
        for (d, max_n) in [(2, 6), (3, 5)] {
            for n in 1..=max_n {
                for lw in lyndon_words(d, n) {
                    let p = lyndon_bracketing_cached(&lw, d, &mut cache).unwrap();
                    let (lead, c) = p.terms().next().unwrap();
                    assert_eq!(lead, &lw);
                    assert_eq!(c, &crate::rational::int(1));
                }
            }
            cache.clear();
        }
    }
}
