//! Permutations in lexicographic order, with signs.

/// All permutations of `0..n` in lexicographic order, each with its sign.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push((current.clone(), sign(&current)));
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    signed_permutations(n).into_iter().map(|(p, _)| p).collect()
}

/// Sign of a permutation of `0..n`, by cycle decomposition.
pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_signs() {
        for n in 0..6 {
            let perms = signed_permutations(n);
            let fact: usize = (1..=n).product();
            assert_eq!(perms.len(), fact);
            let total: i64 = perms.iter().map(|(_, s)| s).sum();
            assert_eq!(total, if n < 2 { 1 } else { 0 });
        }
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
    }
}
