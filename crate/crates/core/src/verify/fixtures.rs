//! Built-in algebra presentations used by scenarios, suites, and tests.
//! Every builder returns a fully valid restricted Lie algebra; shapes are
//! small enough that all enveloping-algebra operations stay dense-friendly.

use crate::liealg::LieAlgebra;
use crate::scalars::{Field, Scalar};

fn zero_row(f: &Field, n: usize) -> Vec<Scalar> {
    vec![f.zero(); n]
}

fn unit_row(f: &Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut row = zero_row(f, n);
    row[i] = f.one();
    row
}

/// The rank-m member of the perfect-field family, truncated to finite
/// dimension: abelian over F_2(t_1..t_m) with basis {x, y_1..y_m},
/// x^[2] = x and y_i^[2] = t_i·x.
pub fn perfect_field_example(m: usize) -> LieAlgebra {
    let vars: Vec<String> = (1..=m).map(|i| format!("t{i}")).collect();
    let f = Field::new(2, &vars).expect("valid field parameters");
    let n = m + 1;
    let mut labels = vec!["x".to_string()];
    labels.extend((1..=m).map(|i| format!("y{i}")));
    let mut pmap = vec![unit_row(&f, n, 0)];
    for i in 0..m {
        let mut row = zero_row(&f, n);
        row[0] = f.var(i);
        pmap.push(row);
    }
    LieAlgebra::new(f, labels, vec![], pmap).expect("valid structure data")
}

/// Heisenberg algebra: [x, y] = z, trivial p-map, over F_p.
pub fn heisenberg(p: u32) -> LieAlgebra {
    let f = Field::prime(p).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "y".into(), "z".into()],
        vec![((0, 1), unit_row(&f, 3, 2))],
        vec![zero_row(&f, 3), zero_row(&f, 3), zero_row(&f, 3)],
    )
    .expect("valid structure data")
}

/// Heisenberg relations with a nontrivial p-map: [x, y] = z and
/// x^[2] = z, over F_2.
pub fn heisenberg_variant_z() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "y".into(), "z".into()],
        vec![((0, 1), unit_row(&f, 3, 2))],
        vec![unit_row(&f, 3, 2), zero_row(&f, 3), zero_row(&f, 3)],
    )
    .expect("valid structure data")
}

/// Two-dimensional nonabelian: [x, w] = w with x toral and w p-nilpotent,
/// over F_2.
pub fn borel2() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "w".into()],
        vec![((0, 1), unit_row(&f, 2, 1))],
        vec![unit_row(&f, 2, 0), zero_row(&f, 2)],
    )
    .expect("valid structure data")
}

/// Split torus of rank k over F_p: abelian with x_i^[p] = x_i.
pub fn split_torus(k: usize, p: u32) -> LieAlgebra {
    let f = Field::prime(p).expect("prime");
    let labels = (1..=k).map(|i| format!("x{i}")).collect();
    let pmap = (0..k).map(|i| unit_row(&f, k, i)).collect();
    LieAlgebra::new(f, labels, vec![], pmap).expect("valid structure data")
}

/// Strongly abelian algebra of dimension n over F_p: zero brackets and
/// zero p-map.
pub fn strongly_abelian(p: u32, n: usize) -> LieAlgebra {
    let f = Field::prime(p).expect("prime");
    let labels = (0..n).map(|i| format!("w{i}")).collect();
    let pmap = (0..n).map(|_| zero_row(&f, n)).collect();
    LieAlgebra::new(f, labels, vec![], pmap).expect("valid structure data")
}

/// Abelian with a toral and a p-nilpotent generator: x^[2] = x,
/// w^[2] = 0, over F_2.
pub fn mixed_torus() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "w".into()],
        vec![],
        vec![unit_row(&f, 2, 0), zero_row(&f, 2)],
    )
    .expect("valid structure data")
}

/// Abelian two-step nilpotent p-map chain: a^[2] = b, b^[2] = 0, over F_2.
pub fn pmap_chain2() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["a".into(), "b".into()],
        vec![],
        vec![unit_row(&f, 2, 1), zero_row(&f, 2)],
    )
    .expect("valid structure data")
}

/// Abelian over F_2, dimension 3: torus ⊕ p-map chain
/// (x^[2] = x, a^[2] = b, b^[2] = 0).
pub fn torus_plus_chain() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "a".into(), "b".into()],
        vec![],
        vec![unit_row(&f, 3, 0), unit_row(&f, 3, 2), zero_row(&f, 3)],
    )
    .expect("valid structure data")
}

/// Abelian over F_2, dimension 4: two toral and two chained nilpotent
/// generators (x^[2] = x, y^[2] = y, a^[2] = b, b^[2] = 0).
pub fn double_torus_plus_chain() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "y".into(), "a".into(), "b".into()],
        vec![],
        vec![
            unit_row(&f, 4, 0),
            unit_row(&f, 4, 1),
            unit_row(&f, 4, 3),
            zero_row(&f, 4),
        ],
    )
    .expect("valid structure data")
}

/// The five abelian radical-suite fixtures over F_2, all with
/// dim u(L) ≤ 16.
pub fn abelian_radical_fixtures() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("mixed_torus", mixed_torus()),
        ("pmap_chain2", pmap_chain2()),
        ("torus_plus_chain", torus_plus_chain()),
        ("double_torus_plus_chain", double_torus_plus_chain()),
        ("strongly_abelian_3", strongly_abelian(2, 3)),
    ]
}

/// Three-dimensional simple algebra over F_3: [e, h] = e, [e, f] = h,
/// [h, f] = f, with e, f p-nilpotent and h^[3] = h.
pub fn sl2_p3() -> LieAlgebra {
    let f3 = Field::prime(3).expect("prime");
    LieAlgebra::new(
        f3.clone(),
        vec!["e".into(), "h".into(), "f".into()],
        vec![
            ((0, 1), unit_row(&f3, 3, 0)),
            ((0, 2), unit_row(&f3, 3, 1)),
            ((1, 2), unit_row(&f3, 3, 2)),
        ],
        vec![zero_row(&f3, 3), unit_row(&f3, 3, 1), zero_row(&f3, 3)],
    )
    .expect("valid structure data")
}

/// A non-split torus over F_2: abelian with x^[2] = y and y^[2] = x; the
/// p-map permutes the basis, so no basis element is a split eigenvector.
pub fn toral_f4() -> LieAlgebra {
    let f = Field::prime(2).expect("prime");
    LieAlgebra::new(
        f.clone(),
        vec!["x".into(), "y".into()],
        vec![],
        vec![unit_row(&f, 2, 1), unit_row(&f, 2, 0)],
    )
    .expect("valid structure data")
}

/// Builders shipped as JSON files under the crate's `fixtures/`
/// directory, keyed by file stem. Regenerate the files with the ignored
/// `regenerate_fixture_files` test after changing a builder.
pub fn fixture_files() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("heisenberg_p2", heisenberg(2)),
        ("heisenberg_p3", heisenberg(3)),
        ("heisenberg_variant_z", heisenberg_variant_z()),
        ("borel2", borel2()),
        ("mixed_torus", mixed_torus()),
        ("pmap_chain2", pmap_chain2()),
        ("torus_plus_chain", torus_plus_chain()),
        ("double_torus_plus_chain", double_torus_plus_chain()),
        ("strongly_abelian_p2_n3", strongly_abelian(2, 3)),
        ("split_torus_k2_p2", split_torus(2, 2)),
        ("sl2_p3", sl2_p3()),
        ("toral_f4", toral_f4()),
    ]
}

/// Location of the shipped algebra files.
pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Path of one shipped algebra file by stem.
pub fn fixture_path(stem: &str) -> std::path::PathBuf {
    fixtures_dir().join(format!("{stem}.json"))
}
