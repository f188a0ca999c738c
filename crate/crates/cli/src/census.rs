//! Isomorphism-class counts of small posets, semilattices and lattices,
//! computed independently of `ndpl_core::enumerate`: posets are grown one
//! maximal element at a time and deduplicated by a backtracking
//! isomorphism test.

type Order = Vec<Vec<bool>>;

/// Adds a new maximal element above each down-set.
fn extensions(p: &Order) -> Vec<Order> {
    let n = p.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let below: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let down_closed = (0..n).all(|i| !below[i] || (0..n).all(|j| !p[j][i] || below[j]));
        if !down_closed {
            continue;
        }
        let mut q: Order = p
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.push(below[i]);
                r
            })
            .collect();
        let mut top = vec![false; n + 1];
        top[n] = true;
        q.push(top);
        out.push(q);
    }
    out
}

fn degree(p: &Order, i: usize) -> (usize, usize) {
    let n = p.len();
    ((0..n).filter(|&j| p[j][i]).count(), (0..n).filter(|&j| p[i][j]).count())
}

fn isomorphic(a: &Order, b: &Order) -> bool {
    fn go(a: &Order, b: &Order, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || degree(a, i) != degree(b, j) {
                continue;
            }
            if (0..i).all(|k| a[k][i] == b[map[k]][j] && a[i][k] == b[j][map[k]]) {
                map.push(j);
                used[j] = true;
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// `levels[n]` holds one poset per isomorphism class on `n` points.
fn posets(max: usize) -> Vec<Vec<Order>> {
    let mut levels: Vec<Vec<Order>> = vec![vec![Vec::new()]];
    for n in 1..=max {
        let mut next: Vec<Order> = Vec::new();
        for p in &levels[n - 1] {
            for q in extensions(p) {
                if !next.iter().any(|r| isomorphic(r, &q)) {
                    next.push(q);
                }
            }
        }
        levels.push(next);
    }
    levels
}

fn has_meets(p: &Order) -> bool {
    let n = p.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let lower: Vec<usize> = (0..n).filter(|&c| p[c][a] && p[c][b]).collect();
            lower.iter().any(|&g| lower.iter().all(|&c| p[c][g]))
        })
    })
}

fn has_joins(p: &Order) -> bool {
    let n = p.len();
    let t: Order = (0..n).map(|i| (0..n).map(|j| p[j][i]).collect()).collect();
    has_meets(&t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// Index `n - 1` holds the count for `n` points.
    pub posets: Vec<usize>,
    pub semilattices: Vec<usize>,
    pub lattices: Vec<usize>,
}

pub fn census(max: usize) -> Census {
    let levels = posets(max);
    let count = |pred: &dyn Fn(&Order) -> bool| levels[1..].iter().map(|l| l.iter().filter(|p| pred(p)).count()).collect();
    Census {
        posets: count(&|_| true),
        semilattices: count(&has_meets),
        lattices: count(&|p| has_meets(p) && has_joins(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let c = census(6);
        assert_eq!(c.posets, [1, 2, 5, 16, 63, 318]);
        assert_eq!(c.lattices, [1, 1, 1, 2, 5, 15]);
        assert_eq!(&c.semilattices[..5], [1, 1, 2, 5, 15]);
    }
}
