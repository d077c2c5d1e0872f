//! Enumeration of fixed points against a brute-force filter over the
//! full box of candidate entries.

use vermalab_core::patterns::{
    enumerate_global_fixed_points, enumerate_patterns, gt_pattern, pattern_pairs, DegreeVector, Pattern,
};

/// Row-major positions `(i, j)` with `1 <= j <= i <= n - 1`.
fn positions(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|i| (1..=i).map(move |j| (i, j))).collect()
}

/// Interlacing and degree conditions, written out independently.
fn admissible(n: usize, entries: &[u32], d: &DegreeVector) -> bool {
    let pos = positions(n);
    let at = |i: usize, j: usize| entries[pos.iter().position(|&p| p == (i, j)).unwrap()];
    for i in 1..n {
        if (1..=i).map(|j| at(i, j)).sum::<u32>() != d.get(i) {
            return false;
        }
    }
    for i in 1..n {
        for k in 1..=i {
            for j in 1..=k {
                if at(k, j) < at(i, j) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every entry tuple in `[0, max d]^entries`, lexicographically.
fn naive(n: usize, d: &DegreeVector) -> Vec<Vec<u32>> {
    let len = positions(n).len();
    let top = d.0.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    let mut cur = vec![0u32; len];
    loop {
        if admissible(n, &cur, d) {
            out.push(cur.clone());
        }
        let Some(k) = (0..len).rev().find(|&k| cur[k] < top) else {
            return out;
        };
        cur[k] += 1;
        for c in &mut cur[k + 1..] {
            *c = 0;
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 2..=4 {
        for d in DegreeVector::all_up_to(n, 4) {
            let got: Vec<Vec<u32>> = enumerate_patterns(n, &d).iter().map(|p| p.entries().to_vec()).collect();
            assert_eq!(got, naive(n, &d), "n={n} d={:?}", d.0);
        }
    }
}

#[test]
fn degree_map_returns_the_request() {
    for n in 2..=4 {
        for d in DegreeVector::all_up_to(n, 4) {
            for p in enumerate_patterns(n, &d) {
                assert_eq!(p.degree(), d);
                assert!(p.is_valid());
            }
        }
    }
}

#[test]
fn rank_three_counts_are_symmetric() {
    for total in 0..=6 {
        for d1 in 0..=total {
            let a = enumerate_patterns(3, &DegreeVector(vec![d1, total - d1])).len();
            let b = enumerate_patterns(3, &DegreeVector(vec![total - d1, d1])).len();
            assert_eq!(a, b, "d=({d1},{})", total - d1);
        }
    }
}

#[test]
fn listed_examples() {
    let two = enumerate_patterns(2, &DegreeVector(vec![3]));
    assert_eq!(two.len(), 1);
    assert_eq!(two[0].get(1, 1), 3);

    let rows = |r: &[&[u32]]| Pattern::from_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap();
    assert_eq!(
        enumerate_patterns(3, &DegreeVector(vec![1, 1])),
        vec![rows(&[&[1], &[0, 1]]), rows(&[&[1], &[1, 0]])]
    );
    assert_eq!(enumerate_patterns(3, &DegreeVector(vec![0, 1])), vec![rows(&[&[0], &[0, 1]])]);
}

#[test]
fn gt_entries_follow_the_deviations() {
    use vermalab_core::exactalg::FieldElem;
    let hinv = FieldElem::hbar().inv().unwrap();
    for m in 0..=4 {
        let p = &enumerate_patterns(2, &DegreeVector(vec![m]))[0];
        let gt = gt_pattern(p);
        assert_eq!(gt.get(1, 1), &FieldElem::x(1).mul(&hinv).sub(&FieldElem::from_i64(m as i64)));
        assert_eq!(gt.get(2, 1), &FieldElem::x(1).mul(&hinv));
        assert_eq!(gt.get(2, 2), &FieldElem::x(2).mul(&hinv).add(&FieldElem::one()));
    }
    let p = Pattern::from_rows(&[vec![1], vec![0, 1]]).unwrap();
    assert_eq!(gt_pattern(&p).get(2, 2), &FieldElem::x(2).mul(&hinv));
}

/// Independent count: permutations times ordered splits of `d` into two
/// degrees, each weighted by its brute-force pattern count.
fn naive_global_count(n: usize, d: &DegreeVector) -> usize {
    let factorial: usize = (1..=n).product();
    let mut splits = vec![Vec::<u32>::new()];
    for &a in &d.0 {
        splits = splits
            .into_iter()
            .flat_map(|s| {
                (0..=a).map(move |b| {
                    let mut s = s.clone();
                    s.push(b);
                    s
                })
            })
            .collect();
    }
    let pairs: usize = splits
        .iter()
        .map(|s| {
            let d0 = DegreeVector(s.clone());
            let dinf = DegreeVector(d.0.iter().zip(s).map(|(a, b)| a - b).collect());
            naive(n, &d0).len() * naive(n, &dinf).len()
        })
        .sum();
    factorial * pairs
}

#[test]
fn global_points_match_brute_force() {
    for n in 2..=3 {
        for d in DegreeVector::all_up_to(n, 3) {
            let pts = enumerate_global_fixed_points(n, &d);
            assert_eq!(pts.len(), naive_global_count(n, &d), "n={n} d={:?}", d.0);
            assert!(pts.windows(2).all(|w| (&w[0].sigma, &w[0].p0, &w[0].pinf) < (&w[1].sigma, &w[1].p0, &w[1].pinf)));
            for p in &pts {
                assert_eq!(p.degree(), d);
            }
            assert_eq!(pattern_pairs(n, &d).len() * (1..=n).product::<usize>(), pts.len());
        }
    }
    assert_eq!(enumerate_global_fixed_points(2, &DegreeVector(vec![1])).len(), 4);
    assert_eq!(enumerate_global_fixed_points(2, &DegreeVector(vec![0])).len(), 2);
}
