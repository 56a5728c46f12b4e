use coreseq::modrep::{builtin_module, FpMatrix, FpModule, GroupShape, JordanDecomposition, JordanTable};
use proptest::prelude::*;

const C9: GroupShape = GroupShape::Cyclic { p: 3, order: 9 };
const C5: GroupShape = GroupShape::Cyclic { p: 5, order: 5 };

fn random_invertible(p: u32, n: usize, seed: &[u32]) -> FpMatrix {
    // unit lower triangular times unit upper triangular
    let mut k = 0;
    let mut next = || {
        k += 1;
        seed[k % seed.len()] % p
    };
    let mut l = FpMatrix::identity(p, n);
    let mut u = FpMatrix::identity(p, n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, next());
            u.set(j, i, next());
        }
    }
    l.mul(&u).unwrap()
}

fn conjugate(m: &FpModule, seed: &[u32]) -> FpModule {
    let p = m.shape().prime();
    let c = random_invertible(p, m.dim(), seed);
    let ci = c.inverse().expect("invertible");
    let gens = m.gens().iter().map(|g| c.mul(g).unwrap().mul(&ci).unwrap()).collect();
    FpModule::new(m.shape(), gens).unwrap()
}

fn jordan_type(q: usize, max_mult: u64) -> impl Strategy<Value = JordanDecomposition> {
    prop::collection::vec(0..=max_mult, q)
        .prop_filter("nonzero module", |m| m.iter().any(|&x| x > 0))
        .prop_map(JordanDecomposition::new)
}

fn seed() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1000, 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jordan_type_survives_base_change(jt in jordan_type(9, 2), s in seed()) {
        let m = conjugate(&FpModule::from_jordan(C9, &jt).unwrap(), &s);
        prop_assert_eq!(m.jordan_decompose().unwrap(), jt.clone());
        prop_assert_eq!(m.dim() as u64, jt.dim());
        prop_assert_eq!(m.free_rank() as u64, jt.multiplicity(9));
        prop_assert_eq!(m.core_dim() as u64, jt.core().dim());
        prop_assert_eq!(m.socle_dim() as u64, jt.summands());
        prop_assert_eq!(m.top_dim() as u64, jt.summands());
    }

    #[test]
    fn block_table_matches_matrix_tensor(a in 1usize..=5, b in 1usize..=5) {
        let mut table = JordanTable::new(C5).unwrap();
        let fast = table.block_product(a, b).unwrap().clone();
        let slow = FpModule::jordan(C5, a).unwrap()
            .tensor(&FpModule::jordan(C5, b).unwrap()).unwrap()
            .jordan_decompose().unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn tensor_table_distributes(x in jordan_type(5, 2), y in jordan_type(5, 2)) {
        let mut table = JordanTable::new(C5).unwrap();
        let fast = table.tensor(&x, &y).unwrap();
        let slow = FpModule::from_jordan(C5, &x).unwrap()
            .tensor(&FpModule::from_jordan(C5, &y).unwrap()).unwrap()
            .jordan_decompose().unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn core_split_agrees_with_core_dim(jt in jordan_type(5, 2), s in seed()) {
        let m = conjugate(&FpModule::from_jordan(C5, &jt).unwrap(), &s);
        let core = m.core_split().unwrap();
        prop_assert_eq!(core.dim(), m.core_dim());
        prop_assert_eq!(core.free_rank(), 0);
        prop_assert_eq!(core.jordan_decompose().unwrap(), jt.core());
    }

    #[test]
    fn syzygy_dimension_counts(jt in jordan_type(9, 2), s in seed()) {
        let m = conjugate(&FpModule::from_jordan(C9, &jt).unwrap(), &s);
        let omega = m.syzygy().unwrap();
        prop_assert_eq!(omega.dim(), 9 * m.top_dim() - m.dim());
        let back = omega.cosyzygy().unwrap();
        prop_assert_eq!(back.core_dim(), m.core_dim());
        let dual = m.dual();
        prop_assert_eq!(dual.free_rank(), m.free_rank());
        prop_assert_eq!(dual.socle_dim(), m.top_dim());
        prop_assert_eq!(dual.dual().jordan_decompose().unwrap(), jt);
    }

    #[test]
    fn elementary_abelian_modules_under_base_change(choice in 0usize..4, s in seed()) {
        let base = match choice {
            0 => builtin_module("z3z3-m").unwrap(),
            1 => builtin_module("z3z3-m-dual").unwrap(),
            2 => builtin_module("z3z3-n").unwrap(),
            _ => FpModule::trivial(GroupShape::Elab { p: 3, rank: 2 }),
        };
        let m = conjugate(&base, &s);
        prop_assert_eq!(m.socle_dim(), base.socle_dim());
        prop_assert_eq!(m.top_dim(), base.top_dim());
        prop_assert_eq!(m.core_dim(), base.core_dim());
        prop_assert_eq!(m.dual().socle_dim(), m.top_dim());
        let omega = m.syzygy().unwrap();
        prop_assert_eq!(omega.dim(), 9 * m.top_dim() - m.dim());
        prop_assert_eq!(m.cosyzygy().unwrap().dim(), 9 * m.socle_dim() - m.dim());
    }
}

#[test]
fn jordan_blocks_of_c7_tensor_squares() {
    let c7 = GroupShape::Cyclic { p: 7, order: 7 };
    let mut table = JordanTable::new(c7).unwrap();
    assert_eq!(table.block_product(2, 2).unwrap().to_string(), "J1 + J3");
    assert_eq!(table.block_product(3, 3).unwrap().to_string(), "J1 + J3 + J5");
    assert_eq!(table.block_product(4, 4).unwrap().to_string(), "J1 + J3 + J5 + J7");
    assert_eq!(table.block_product(1, 6).unwrap().to_string(), "J6");
}

#[test]
fn regular_module_is_free_and_has_no_core() {
    let shape = GroupShape::Elab { p: 3, rank: 2 };
    let kg = FpModule::regular(shape);
    assert_eq!(kg.dim(), 9);
    assert_eq!(kg.free_rank(), 1);
    assert_eq!(kg.core_dim(), 0);
    assert_eq!(kg.syzygy().unwrap().dim(), 0);
}

#[test]
fn rejects_non_commuting_generators() {
    let shape = GroupShape::Elab { p: 2, rank: 2 };
    let a = FpMatrix::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let b = FpMatrix::from_rows(2, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
    assert!(FpModule::new(shape, vec![a, b]).is_err());
}
