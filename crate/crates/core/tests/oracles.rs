//! Expected values recomputed by brute force, independently of the library's
//! own algorithms.

use std::collections::{BTreeSet, HashSet};

use parcross::corpus::{enumerate_systems, labeled_systems, named_system, sieben_density_gap};
use parcross::crossed_product::{
    graded_multiply, orbit_oracle, spectral_dims, standard_rep, structure, GradedElement,
};
use parcross::matrix::Matrix;
use parcross::scalar::{GaussQ, StarRing};
use parcross::star_engine::MatrixStarAlgebra;
use parcross::PartialSystem;

type Pairs = Vec<(usize, usize)>;

fn relation_compose(f: &Pairs, g: &Pairs) -> Pairs {
    // f after g
    g.iter()
        .filter_map(|&(a, b)| f.iter().find(|&&(c, _)| c == b).map(|&(_, d)| (a, d)))
        .collect()
}

fn brute_power(sys: &PartialSystem, n: i64) -> Pairs {
    let k = sys.block_count();
    let step: Pairs = if n >= 0 {
        sys.map().pairs()
    } else {
        sys.map().pairs().into_iter().map(|(a, b)| (b, a)).collect()
    };
    let mut acc: Pairs = (0..k).map(|i| (i, i)).collect();
    for _ in 0..n.unsigned_abs() {
        acc = relation_compose(&step, &acc);
    }
    acc
}

fn brute_d(sys: &PartialSystem, n: i64) -> BTreeSet<usize> {
    brute_power(sys, n).into_iter().map(|(_, t)| t).collect()
}

#[test]
fn power_ideals_match_relation_composition() {
    for sys in (0..=4).flat_map(labeled_systems) {
        for n in -6..=6 {
            assert_eq!(sys.ideal_d(n).members(), &brute_d(&sys, n), "{sys:?} n={n}");
            let pairs: BTreeSet<(usize, usize)> = sys.power(n).pairs().into_iter().collect();
            let brute: BTreeSet<(usize, usize)> = brute_power(&sys, n).into_iter().collect();
            assert_eq!(pairs, brute);
        }
    }
}

#[test]
fn shift_three_examples() {
    let sys = named_system("shift_n(3)").unwrap();
    assert_eq!(brute_power(&sys, 2), vec![(0, 2)]);
    let inv: BTreeSet<_> = brute_power(&sys, -1).into_iter().collect();
    assert_eq!(inv, [(1, 0), (2, 1)].into_iter().collect());
    // I_n from its defining sum of intersections, evaluated on raw sets
    let ladder = |n: i64| -> BTreeSet<usize> {
        (1..=n)
            .flat_map(|j| {
                brute_d(&sys, j - n)
                    .intersection(&brute_d(&sys, j - 1))
                    .copied()
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    assert_eq!(ladder(2), (0..3).collect());
    assert_eq!(ladder(3), (0..3).collect());
    assert!(ladder(4).is_empty());
    for n in 2..=5 {
        assert_eq!(sys.ladder_ideal(n).unwrap().members(), &ladder(n));
    }
}

fn canonical(k: usize, pairs: &Pairs) -> Pairs {
    let mut best: Option<Pairs> = None;
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut image: Pairs = pairs.iter().map(|&(a, b)| (p[a], p[b])).collect();
        image.sort();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    });
    best.unwrap_or_default()
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

#[test]
fn enumeration_matches_relabeling_classes() {
    let mut expected = 0;
    for k in 1..=4 {
        let classes: HashSet<Pairs> = labeled_systems(k)
            .iter()
            .map(|s| canonical(k, &s.map().pairs()))
            .collect();
        expected += classes.len();
        let listed: Vec<Pairs> = enumerate_systems(k)
            .unwrap()
            .iter()
            .filter(|s| s.block_count() == k)
            .map(|s| canonical(k, &s.map().pairs()))
            .collect();
        let distinct: HashSet<Pairs> = listed.iter().cloned().collect();
        assert_eq!(distinct.len(), listed.len(), "duplicates at k={k}");
        assert_eq!(distinct, classes, "k={k}");
    }
    assert_eq!(enumerate_systems(4).unwrap().len(), expected);
    assert_eq!(enumerate_systems(2).unwrap().len(), 7);
}

#[test]
fn spectral_dims_count_monomials() {
    for sys in (1..=4).flat_map(labeled_systems) {
        let dims = spectral_dims(&sys);
        for n in -6..=6 {
            let count = brute_d(&sys, n).len() as u64;
            assert_eq!(dims.at(n), count);
        }
    }
}

/// Rank over ℚ(i) by plain dense Gaussian elimination.
fn dense_rank(mut rows: Vec<Vec<GaussQ>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<GaussQ> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.clone() - &factor * y;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn flatten(m: &Matrix<GaussQ>) -> Vec<GaussQ> {
    let mut v = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            v.push(m.get(i, j).clone());
        }
    }
    v
}

/// Dimension of the span of all words in the generators and their adjoints,
/// growing word length until the span stops changing.
fn word_span_dim(gens: &[Matrix<GaussQ>]) -> usize {
    let mut letters: Vec<Matrix<GaussQ>> = gens.to_vec();
    letters.extend(gens.iter().map(Matrix::adjoint));
    let mut words = letters.clone();
    let mut all = letters.clone();
    let mut dim = dense_rank(all.iter().map(flatten).collect());
    loop {
        let mut next = Vec::new();
        for w in &words {
            for l in &letters {
                next.push(w * l);
            }
        }
        all.extend(next.iter().cloned());
        let new_dim = dense_rank(all.iter().map(flatten).collect());
        if new_dim == dim {
            return dim;
        }
        dim = new_dim;
        // keep only a spanning set of the new words to bound the work
        let mut kept: Vec<Matrix<GaussQ>> = Vec::new();
        for w in next {
            let mut trial: Vec<Vec<GaussQ>> = kept.iter().map(flatten).collect();
            let before = dense_rank(trial.clone());
            trial.push(flatten(&w));
            if dense_rank(trial) > before {
                kept.push(w);
            }
        }
        words = kept;
    }
}

#[test]
fn saturation_matches_word_closure() {
    let systems = [
        named_system("shift_n(1)").unwrap(),
        named_system("shift_n(2)").unwrap(),
        named_system("shift_n(3)").unwrap(),
        PartialSystem::numbered(&[2, 2], &[(1, 2)]).unwrap(),
        PartialSystem::numbered(&[1, 2, 2, 1], &[(2, 3), (1, 4)]).unwrap(),
    ];
    for sys in &systems {
        for orbit in sys.orbits().chains() {
            let gens = standard_rep(sys, orbit).oracle_generators().unwrap();
            let alg = MatrixStarAlgebra::saturate(&gens).unwrap();
            let size = orbit.len() * orbit.block_dim as usize;
            assert_eq!(alg.dim(), word_span_dim(&gens), "{sys:?}");
            assert_eq!(alg.dim(), size * size);
        }
    }
}

#[test]
fn oracle_agrees_with_structure_on_small_corpus() {
    for sys in (1..=4).flat_map(labeled_systems) {
        let predicted = structure(&sys).finite_sizes();
        let mut found: Vec<u64> = Vec::new();
        for orbit in sys.orbits().chains() {
            let check = orbit_oracle(&sys, orbit).unwrap().unwrap();
            assert!(check.matches, "{sys:?}");
            found.extend(check.blocks.iter().map(|&b| b as u64));
        }
        found.sort_by(|a, b| b.cmp(a));
        assert_eq!(found, predicted);
    }
}

#[test]
fn one_term_convolution() {
    // (a m^n)(b m^k) = f^n(f^{-n}(a) b) m^{n+k}, on unit blocks of σ_4
    let sys = named_system("shift_n(4)").unwrap();
    let one = || Matrix::<GaussQ>::identity(1);
    for n in -3i64..=3 {
        for k in -3i64..=3 {
            for a in brute_d(&sys, n) {
                for b in brute_d(&sys, k) {
                    let x = GradedElement::monomial(&sys, n, a, one()).unwrap();
                    let y = GradedElement::monomial(&sys, k, b, one()).unwrap();
                    let product = graded_multiply(&sys, &x, &y);
                    let pulled = brute_power(&sys, -n)
                        .into_iter()
                        .find(|&(s, _)| s == a)
                        .map(|(_, t)| t)
                        .unwrap();
                    if pulled == b {
                        assert_eq!(
                            product,
                            GradedElement::monomial(&sys, n + k, a, one()).unwrap()
                        );
                    } else {
                        assert!(product.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn triangular_ladder_ideals() {
    for big_n in 1..=5usize {
        let sys = named_system(&format!("direct_sum_shifts_N({big_n})")).unwrap();
        for n in 2..=big_n as i64 + 2 {
            let expected: BTreeSet<String> = (1..=big_n)
                .flat_map(|k| (1..=big_n + 1 - k).map(move |l| (k, l)))
                .filter(|&(k, l)| (k + l) as i64 > n)
                .map(|(k, l)| format!("{k}.{l}"))
                .collect();
            let got: BTreeSet<String> = sys.ladder_ideal(n).unwrap().ids().into_iter().collect();
            assert_eq!(got, expected, "N={big_n} n={n}");
        }
        assert!(sys.wold().core.is_empty());
        assert!(sys.d_infinity(parcross::Direction::Forward).is_empty());
        assert!(sys.d_infinity(parcross::Direction::Backward).is_empty());
    }
}

#[test]
fn gap_brackets_floating_point_estimate() {
    for (n_terms, window, translates) in [(5u64, 4u64, 1i64), (20, 3, 4), (60, 6, 5)] {
        let report = sieben_density_gap(n_terms, window, translates).unwrap();
        let mut pts: Vec<f64> = vec![-(window as f64), window as f64];
        for k in 1..=translates {
            let base = k as f64 * std::f64::consts::PI;
            pts.push(base);
            let mut h = 0.0;
            for j in 1..=n_terms {
                h += 1.0 / j as f64;
                pts.push(base + h);
                pts.push(base - h);
            }
        }
        pts.retain(|x| x.abs() <= window as f64);
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let gap = pts.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        let (lo, hi) = report.approx();
        assert!(
            lo - 1e-9 <= gap && gap <= hi + 1e-9,
            "{gap} not in [{lo}, {hi}]"
        );
    }
}
