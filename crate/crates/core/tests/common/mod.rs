#![allow(dead_code)]

use std::path::PathBuf;

use num_rational::BigRational;
use torusjump::chaincx::{
    fox_complex, koszul_torus, surface, tensor_product, twist, wedge, TensorMode,
};
use torusjump::ring::{Coeff, CoefficientDomain};
use torusjump::{FreeComplex, GroupPresentation};

pub const QQ: CoefficientDomain = CoefficientDomain::Rational;
pub const ZZ: CoefficientDomain = CoefficientDomain::Integer;

pub fn fp(p: u64) -> CoefficientDomain {
    CoefficientDomain::prime(p).unwrap()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn rat(a: i64, b: i64) -> Coeff {
    Coeff::Rational(BigRational::new(a.into(), b.into()))
}

/// Complexes the oracle and propagation checks run over, with labels.
pub fn corpus() -> Vec<(String, FreeComplex)> {
    let mut out: Vec<(String, FreeComplex)> = Vec::new();
    for n in 1..=3 {
        out.push((format!("torus:{n} QQ"), koszul_torus(n, QQ).unwrap()));
    }
    // over F2 the one-variable torus has only 26 characters up to F16
    for n in 2..=3 {
        out.push((format!("torus:{n} F2"), koszul_torus(n, fp(2)).unwrap()));
    }
    for n in 1..=3 {
        out.push((format!("torus:{n} F5"), koszul_torus(n, fp(5)).unwrap()));
    }
    let t2 = koszul_torus(2, QQ).unwrap();
    out.push((
        "twist torus:2 by (2,1)".into(),
        twist(&t2, &[rat(2, 1), rat(1, 1)]).unwrap(),
    ));
    out.push((
        "twist torus:2 by (1/2,3)".into(),
        twist(&t2, &[rat(1, 2), rat(3, 1)]).unwrap(),
    ));
    let t2f5 = koszul_torus(2, fp(5)).unwrap();
    let dom = fp(5);
    out.push((
        "twist torus:2 by (2,3) mod 5".into(),
        twist(&t2f5, &[dom.from_i64(2), dom.from_i64(3)]).unwrap(),
    ));
    for k in 1..=5 {
        out.push((format!("wedge:{k}"), wedge(k, QQ).unwrap()));
    }
    for g in 2..=3 {
        out.push((format!("surface:{g}"), surface(g, QQ).unwrap()));
    }
    let z2 =
        GroupPresentation::new(2, vec![GroupPresentation::parse_word("abAB").unwrap()]).unwrap();
    out.push(("fox Z^2".into(), fox_complex(&z2, QQ).unwrap()));
    let t1 = koszul_torus(1, QQ).unwrap();
    out.push((
        "tensor torus:1 x torus:1".into(),
        tensor_product(&t1, &t1, TensorMode::Concatenate).unwrap(),
    ));
    out.push((
        "tensor wedge:2 x torus:1".into(),
        tensor_product(&wedge(2, QQ).unwrap(), &t1, TensorMode::Concatenate).unwrap(),
    ));
    out.push((
        "fixture A".into(),
        FreeComplex::load(fixture("fixture_a.json")).unwrap(),
    ));
    out.push((
        "fixture B".into(),
        FreeComplex::load(fixture("fixture_b.json")).unwrap(),
    ));
    out
}
