//! Permutations of `{0..n-1}` in one-line notation: `p[i]` is the image of `i`.
//!
//! Composition `compose(a, b)` is `a ∘ b` (apply `b` first).

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_bijection(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// Disjoint cycles, each starting at its smallest point, ordered by that point.
/// Fixed points appear as 1-cycles.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    t.sort_unstable_by(|a, b| b.cmp(a));
    t
}

/// Cycle notation with 1-based points, e.g. `(1 2)(3 4 5)`; the identity is `()`.
pub fn cycle_string(p: &[usize]) -> String {
    let parts: Vec<String> = cycles(p)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let inner: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", inner.join(" "))
        })
        .collect();
    if parts.is_empty() {
        "()".to_string()
    } else {
        parts.concat()
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank among all permutations of `p.len()` points.
pub fn rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r += smaller * factorial(n - 1 - i);
    }
    r
}

pub fn unrank(n: usize, mut r: usize) -> Perm {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let k = r / f;
        r %= f;
        out.push(pool.remove(k));
    }
    out
}

/// All permutations of `n` points in lexicographic order.
pub fn all(n: usize) -> Vec<Perm> {
    (0..factorial(n)).map(|r| unrank(n, r)).collect()
}

/// Parity of the permutation: `true` when odd.
pub fn is_odd(p: &[usize]) -> bool {
    cycles(p).iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
}
