use proptest::prelude::*;

use signrank::decompose::{express_column, independent_set_size_limit};
use signrank::setsys::MonochromaticSubfamilies;
use signrank::tensor::{tensor_signed_decomposition_with, PrimitiveTensor, TensorOptions};
use signrank::*;

fn matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = BoolMatrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(any::<bool>(), m * n).prop_map(move |cells| {
            BoolMatrix::from_fn(m, n, |i, j| cells[i * n + j]).unwrap()
        })
    })
}

fn subset(size: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..size, 1..=size).prop_map(|s| s.into_iter().collect())
}

fn rectangle(m: usize, n: usize) -> impl Strategy<Value = Rectangle> {
    (subset(m), subset(n)).prop_map(|(r, c)| Rectangle::new(r, c).unwrap())
}

fn decomposition(m: usize, n: usize) -> impl Strategy<Value = SignedDecomposition> {
    proptest::collection::vec((any::<bool>(), rectangle(m, n)), 0..6).prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .map(|(pos, r)| if pos { SignedTerm::plus(r) } else { SignedTerm::minus(r) })
            .collect();
        SignedDecomposition::new(m, n, terms).unwrap()
    })
}

fn tensor(order: usize, max_side: usize) -> impl Strategy<Value = BoolTensor> {
    proptest::collection::vec(1..=max_side, order).prop_flat_map(|dims| {
        let len: usize = dims.iter().product();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |cells| {
            BoolTensor::new(dims.clone(), cells.into_iter().map(u8::from).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn evaluation_is_linear(
        (a, b) in (1..5usize, 1..5usize).prop_flat_map(|(m, n)| (decomposition(m, n), decomposition(m, n)))
    ) {
        let joined = a.concat(&b).unwrap();
        let sum = a.evaluate().checked_add(&b.evaluate()).unwrap();
        prop_assert_eq!(joined.evaluate(), sum);
    }

    #[test]
    fn any_exact_decomposition_is_at_least_rank(d in (1..5usize, 1..5usize).prop_flat_map(|(m, n)| decomposition(m, n))) {
        let value = d.evaluate();
        if value.entries().iter().all(|&x| x == 0 || x == 1) {
            let target = BoolMatrix::new(
                d.rows(),
                d.cols(),
                value.entries().iter().map(|&x| x as u8).collect(),
            ).unwrap();
            prop_assert!(d.verify(&target).unwrap());
            prop_assert!(d.len() >= exact_rank(&target));
        }
    }

    #[test]
    fn zero_or_repeated_columns_are_dependent(m in matrix(5, 5), j in 0..5usize, k in 0..5usize) {
        let j = j % m.cols();
        let zeroed = BoolMatrix::from_fn(m.rows(), m.cols(), |r, c| c != j && m.get(r, c)).unwrap();
        let mut cols = vec![j];
        cols.extend((0..m.cols()).filter(|&c| c != j).take(k % m.cols()));
        prop_assert!(!is_independent(&zeroed, &cols).unwrap());
        if m.cols() >= 2 {
            let k = (j + 1 + k % (m.cols() - 1)) % m.cols();
            let copied = BoolMatrix::from_fn(m.rows(), m.cols(), |r, c| {
                m.get(r, if c == k { j } else { c })
            }).unwrap();
            prop_assert!(!is_independent(&copied, &[j, k]).unwrap());
        }
    }

    #[test]
    fn constructive_decomposition_invariants(m in matrix(7, 7)) {
        let res = decompose_with(&m, &DecomposeOptions::default()).unwrap();
        let r = exact_rank(&m);
        let s = res.independent.len();
        prop_assert!(res.decomposition.verify(&m).unwrap());
        prop_assert!(res.decomposition.len() <= 2 * s);
        prop_assert!(res.decomposition.len() >= r);
        prop_assert!(s <= m.cols().min(independent_set_size_limit(r)));
        prop_assert!(independent_set_bound_check(s, r));
        prop_assert!(is_independent(&m, res.independent.columns()).unwrap());
        let again = signed_rectangle_decomposition(&m).unwrap();
        prop_assert_eq!(again, res.decomposition);
    }

    #[test]
    fn every_column_is_expressed_exactly(m in matrix(6, 6)) {
        let s = maximal_independent_columns(&m).unwrap();
        for c in 0..m.cols() {
            let alpha = express_column(&m, &s, c).unwrap();
            for i in 0..m.rows() {
                let v: i64 = alpha
                    .entries()
                    .iter()
                    .map(|&(y, a)| i64::from(a) * i64::from(m.get(i, y)))
                    .sum();
                prop_assert_eq!(v, i64::from(m.get(i, c)));
            }
        }
    }

    #[test]
    fn column_order_changes_set_but_not_correctness(m in matrix(5, 6), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..m.cols()).collect();
        let k = (seed as usize) % order.len();
        order.rotate_left(k);
        if seed % 2 == 0 { order.reverse(); }
        let opts = DecomposeOptions { order: Some(order), ..DecomposeOptions::default() };
        let res = decompose_with(&m, &opts).unwrap();
        prop_assert!(res.decomposition.verify(&m).unwrap());
        prop_assert!(res.decomposition.len() <= 2 * res.independent.len());
    }

    #[test]
    fn rectangle_family_round_trip(
        (m, n, rects) in (1..5usize, 1..5usize)
            .prop_flat_map(|(m, n)| (Just(m), Just(n), proptest::collection::vec(rectangle(m, n), 1..6)))
    ) {
        let p = rectangles_to_family(&rects, m, n).unwrap();
        let back: Vec<Rectangle> = element_rectangles(&p).into_iter().flatten().collect();
        prop_assert_eq!(&back, &rects);
        let mut sum = IntMatrix::zeros(m, n);
        for r in &rects {
            for &i in r.rows() {
                for &j in r.cols() {
                    sum.add_at(i, j, 1);
                }
            }
        }
        prop_assert_eq!(family_to_matrix(&p), sum);
    }

    #[test]
    fn reduction_shifts_every_cell_by_u(m in matrix(5, 5), use_witness in any::<bool>()) {
        let dec = if use_witness {
            exact_partition_number(&m, SearchBudget::default()).unwrap().witness
        } else {
            signed_rectangle_decomposition(&m).unwrap()
        };
        if dec.is_empty() {
            return Ok(());
        }
        let red = signed_to_cross_intersecting(&m, &dec).unwrap();
        let u = red.u;
        prop_assert_eq!(red.family.universe(), 2 * u);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                prop_assert_eq!(red.family.intersection_size(i, j), usize::from(m.get(i, j)) + u);
            }
        }
        prop_assert!(check_cross_intersecting(&red.family, &IntersectionSpec::pair(u, u + 1)));
        prop_assert!(exact_rank(&family_to_matrix(&red.family)) <= red.family.universe());
        let back = ab_to_boolean(&family_to_matrix(&red.family), u as i64, u as i64 + 1).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn ab_split_reconstructs(b in matrix(5, 5), a in -3i64..4, gap in 1i64..4) {
        let top = a + gap;
        let mab = IntMatrix::new(
            b.rows(),
            b.cols(),
            b.entries().iter().map(|&x| if x == 1 { top } else { a }).collect(),
        ).unwrap();
        let got = ab_to_boolean(&mab, a, top).unwrap();
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                prop_assert_eq!(a + gap * i64::from(got.get(i, j)), mab.get(i, j));
            }
        }
        prop_assert_eq!(got, b);
    }

    #[test]
    fn best_subfamilies_are_monochromatic(m in matrix(5, 5)) {
        let dec = signed_rectangle_decomposition(&m).unwrap();
        if dec.is_empty() {
            return Ok(());
        }
        let red = signed_to_cross_intersecting(&m, &dec).unwrap();
        let u = red.u;
        let best: MonochromaticSubfamilies = best_monochromatic_subfamilies(&red.family, u, u + 1).unwrap();
        let sub = best.to_pair(&red.family);
        prop_assert!(check_cross_intersecting(&sub, &IntersectionSpec::singleton(best.value)));
        prop_assert!(best.value == u || best.value == u + 1);
    }

    #[test]
    fn slices_are_flattening_columns(t in tensor(3, 3), lambda in 0..3usize) {
        let f = flatten(&t, lambda).unwrap();
        for v in 0..t.dims()[lambda] {
            let s = slice(&t, lambda, v).unwrap();
            prop_assert_eq!(f.column(v), s.data().to_vec());
        }
    }

    #[test]
    fn order_two_slices_are_matrix_columns(m in matrix(4, 4)) {
        let t = BoolTensor::from_matrix(&m);
        let f = flatten(&t, 1).unwrap();
        prop_assert_eq!(&f, &m);
        for v in 0..m.cols() {
            prop_assert_eq!(slice(&t, 1, v).unwrap().data().to_vec(), m.column(v));
        }
    }

    #[test]
    fn tensor_decomposition_reconstructs(t in tensor(3, 3), lambda in 0..3usize) {
        let opts = TensorOptions { lambda: Some(lambda), ..TensorOptions::default() };
        let d = tensor_signed_decomposition_with(&t, &opts).unwrap();
        prop_assert!(d.verify(&t));
        for term in d.terms() {
            let p: &PrimitiveTensor = &term.tensor;
            prop_assert!(p.sets().iter().all(|q| !q.is_empty()));
        }
        let r = flattening_rank(&t);
        let s = maximal_independent_slices(&t, lambda, &IndependenceConfig::default()).unwrap();
        prop_assert!(independent_set_bound_check(s.len(), r));
    }

    #[test]
    fn order_four_tensors_reconstruct(t in tensor(4, 2)) {
        let d = tensor_signed_decomposition(&t).unwrap();
        prop_assert!(d.verify(&t));
    }

    #[test]
    fn order_two_tensor_matches_matrix_engine(m in matrix(5, 5)) {
        let d = tensor_signed_decomposition(&BoolTensor::from_matrix(&m)).unwrap();
        let md = signed_rectangle_decomposition(&m).unwrap();
        prop_assert_eq!(d.len(), md.len());
        for (t, s) in d.terms().iter().zip(md.terms()) {
            prop_assert_eq!(t.sign, s.sign);
            prop_assert_eq!(&t.tensor.sets()[0], &s.rect.rows().to_vec());
            prop_assert_eq!(&t.tensor.sets()[1], &s.rect.cols().to_vec());
        }
    }
}
