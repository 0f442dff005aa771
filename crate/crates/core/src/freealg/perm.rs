//! Permutations of `0..n` in lexicographic order.

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Position of `perm` in the lexicographic listing of all permutations of
/// `0..perm.len()`.
pub fn lex_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut used = 0u64;
    let mut rank = 0;
    for (i, &p) in perm.iter().enumerate() {
        let smaller_unused = (0..p).filter(|&q| used & (1 << q) == 0).count();
        rank += smaller_unused * factorial(n - 1 - i);
        used |= 1 << p;
    }
    rank
}

pub fn lex_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    out
}

/// All permutations of `0..n`, lexicographically.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    (0..factorial(n)).map(|r| lex_unrank(n, r)).collect()
}

/// `+1` or `-1` according to the parity of the permutation.
pub fn sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All orderings of the given items (lexicographic in input positions).
pub fn orderings<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    all_perms(items.len())
        .into_iter()
        .map(|p| p.into_iter().map(|i| items[i].clone()).collect())
        .collect()
}
