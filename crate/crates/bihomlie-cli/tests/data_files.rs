//! The bundled data files are generated from the library's stock algebras.
//! This test regenerates them in memory and checks the on-disk copies are
//! bit-identical; run with BLESS=1 to rewrite them.

use std::collections::BTreeMap;
use std::path::PathBuf;

use bihomlie::catalog;
use bihomlie::format::{parse_algebra, AlgebraFile, BracketEntry, ModuleBlock, RhoEntry};
use bihomlie::graded::{GradedSpace, Vector};
use bihomlie::quadratic::tstar_extension;
use bihomlie::rep::{CocycleTensor, Representation};
use bihomlie::scalar::Scalar;

fn render_matrix(m: &bihomlie::Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).render()).collect())
        .collect()
}

fn expected_files() -> Vec<(&'static str, AlgebraFile)> {
    let n4 = catalog::n4();
    let l3 = catalog::l3();
    let n22 = catalog::n22();
    let osp = catalog::osp12_lie();

    // N4 with its adjoint representation and a diagonal f block, the input
    // for the semidirect / theta-f / sigma / dual commands.
    let adjoint = Representation::adjoint(&n4).unwrap();
    let mut n4_adjoint = AlgebraFile::from_bundle3("n4_adjoint", &n4);
    n4_adjoint.module = Some(ModuleBlock {
        dim: 4,
        parity: vec![0, 0, 0, 0],
        basis: vec!["m1".into(), "m2".into(), "m3".into(), "m4".into()],
        alpha: render_matrix(&bihomlie::Matrix::identity(4)),
        beta: render_matrix(&bihomlie::Matrix::identity(4)),
    });
    n4_adjoint.rho = Some(
        adjoint
            .stored_pairs()
            .map(|(k, m)| RhoEntry {
                args: vec![k.0, k.1],
                matrix: render_matrix(m),
            })
            .collect(),
    );
    n4_adjoint.f = Some(render_matrix(&bihomlie::Matrix::diagonal(&[
        Scalar::one(),
        Scalar::one(),
        Scalar::one(),
        Scalar::from_int(2),
    ])));

    // N4 with a trivial one-dimensional module and the central cocycle
    // theta(e1,e2,e3) = m, the input for the t-theta command.
    let mut n4_central = AlgebraFile::from_bundle3("n4_central", &n4);
    n4_central.module = Some(ModuleBlock {
        dim: 1,
        parity: vec![0],
        basis: vec!["m".into()],
        alpha: vec![vec!["1".into()]],
        beta: vec![vec!["1".into()]],
    });
    let module = GradedSpace::new(vec![0], Some(vec!["m".into()])).unwrap();
    let mut theta_entries = BTreeMap::new();
    // Super-skew orbit of (e1, e2, e3) -> m on a purely even space.
    let orbit: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
    ];
    for (idx, sign) in orbit {
        theta_entries.insert(idx, Vector::unit(1, 0).scale(&Scalar::from_int(sign)));
    }
    let theta = CocycleTensor::new(&n4.space, &module, theta_entries).unwrap();
    let n4_central = n4_central.with_theta(&theta, &module);

    // A two-dimensional totally associative factor with the constant
    // product mu = e1, input for the tensor command.
    let const2 = AlgebraFile {
        name: "const2".into(),
        arity: 3,
        dim: 2,
        parity: vec![0, 0],
        basis: vec!["e1".into(), "e2".into()],
        bracket: (0..2usize)
            .flat_map(|p| {
                (0..2usize).flat_map(move |q| {
                    (0..2usize).map(move |r| BracketEntry {
                        args: vec![p, q, r],
                        out: BTreeMap::from([("e1".to_string(), "1".to_string())]),
                    })
                })
            })
            .collect(),
        alpha: render_matrix(&bihomlie::Matrix::identity(2)),
        beta: render_matrix(&bihomlie::Matrix::identity(2)),
        associative: Some(true),
        module: None,
        rho: None,
        theta: None,
        form: None,
        f: None,
        ideals: None,
    };

    // T*_0(N4): the quadratic extension with its hyperbolic form.
    let ext = tstar_extension(&n4, &CocycleTensor::zero(&n4.space, &n4.space.dual())).unwrap();
    let tstar_n4 = AlgebraFile::from_quadratic("tstar_n4", &ext.quadratic);

    // N4 with a deliberately broken bracket entry: still a well-formed
    // file, but the axioms fail.
    let mut broken = AlgebraFile::from_bundle3("n4_broken", &n4);
    broken.bracket.push(BracketEntry {
        args: vec![0, 1, 3],
        out: BTreeMap::from([("e1".to_string(), "1".to_string())]),
    });

    vec![
        ("n4.json", AlgebraFile::from_bundle3("n4", &n4)),
        ("l3.json", AlgebraFile::from_bundle3("l3", &l3)),
        ("n22.json", AlgebraFile::from_bundle3("n22", &n22)),
        ("osp12.json", AlgebraFile::from_bundle2("osp12", &osp)),
        ("n4_adjoint.json", n4_adjoint),
        ("n4_central.json", n4_central),
        ("const2.json", const2),
        ("tstar_n4.json", tstar_n4),
        ("n4_broken.json", broken),
    ]
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[test]
fn bundled_files_are_canonical() {
    let bless = std::env::var("BLESS").is_ok();
    let dir = data_dir();
    if bless {
        std::fs::create_dir_all(&dir).unwrap();
    }
    for (name, expected) in expected_files() {
        let path = dir.join(name);
        let rendered = expected.render();
        if bless {
            std::fs::write(&path, format!("{rendered}\n")).unwrap();
            continue;
        }
        let on_disk = std::fs::read(&path)
            .unwrap_or_else(|e| panic!("missing bundled file {name}: {e}"));
        let parsed = parse_algebra(&on_disk).unwrap();
        assert_eq!(parsed, expected, "bundled file {name} is out of date");
        assert_eq!(
            String::from_utf8(on_disk).unwrap().trim_end(),
            rendered,
            "bundled file {name} is not canonically rendered"
        );
    }
}
