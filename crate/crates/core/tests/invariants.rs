mod common;

use common::*;
use torusjump::chaincx::{koszul_torus, surface, tensor_product, twist, wedge, TensorMode};
use torusjump::groebner::Ideal;
use torusjump::jumploci::{fitting_ideal, jumping_ideal};
use torusjump::ring::{LaurentRing, MonomialOrder, Polynomial, TorusPoint};
use torusjump::verify::{acyclic_off_top, fiber_betti, sample_points, AcyclicityClause};
use torusjump::{jump_loci, FreeComplex, Limits, PolyMatrix};

fn same_loci(a: &FreeComplex, b: &FreeComplex) -> bool {
    let (la, lb) = (jump_loci(a).unwrap(), jump_loci(b).unwrap());
    a.degrees().eq(b.degrees())
        && a.degrees()
            .all(|i| la.ideal(i).same_variety(&lb.ideal(i)).unwrap())
}

#[test]
fn fox_presentation_of_z2_has_the_torus_loci() {
    let z2 = torusjump::chaincx::fox_complex(
        &torusjump::GroupPresentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap(),
        QQ,
    )
    .unwrap();
    assert!(same_loci(&z2, &koszul_torus(2, QQ).unwrap()));
}

#[test]
fn tensor_of_circles_has_the_torus_loci() {
    let t1 = koszul_torus(1, QQ).unwrap();
    let t = tensor_product(&t1, &t1, TensorMode::Concatenate).unwrap();
    assert!(same_loci(&t, &koszul_torus(2, QQ).unwrap()));
}

#[test]
fn degree_zero_locus_of_a_tensor_is_a_product() {
    let a = wedge(2, QQ).unwrap();
    let b = koszul_torus(1, QQ).unwrap();
    let t = tensor_product(&a, &b, TensorMode::Concatenate).unwrap();
    let (la, lb, lt) = (
        jump_loci(&a).unwrap(),
        jump_loci(&b).unwrap(),
        jump_loci(&t).unwrap(),
    );
    for chi in sample_points(&lt, 64, 3).unwrap() {
        let TorusPoint::Rational(c) = &chi else {
            unreachable!()
        };
        let x = TorusPoint::Rational(c[..2].to_vec());
        let y = TorusPoint::Rational(c[2..].to_vec());
        let product = la.contains(0, &x).unwrap() && lb.contains(0, &y).unwrap();
        assert_eq!(lt.contains(0, &chi).unwrap(), product, "{chi}");
    }
}

#[test]
fn euler_characteristic_under_twist_and_tensor() {
    for (_, c) in corpus() {
        let lambda: Vec<_> = (0..c.ring().num_vars())
            .map(|_| c.ring().coeff().one())
            .collect();
        assert_eq!(
            twist(&c, &lambda).unwrap().euler_characteristic(),
            c.euler_characteristic()
        );
    }
    let (a, b) = (wedge(3, QQ).unwrap(), surface(2, QQ).unwrap());
    let t = tensor_product(&a, &b, TensorMode::Concatenate).unwrap();
    assert_eq!(
        t.euler_characteristic(),
        a.euler_characteristic() * b.euler_characteristic()
    );
}

#[test]
fn twist_moves_fiber_betti_numbers() {
    for (_, c) in corpus().into_iter().filter(|(_, c)| c.ring().coeff() == QQ) {
        let lambda: Vec<_> = [2i64, 3, 5, 7, 2, 3]
            .iter()
            .take(c.ring().num_vars())
            .map(|&v| QQ.from_i64(v))
            .collect();
        let t = twist(&c, &lambda).unwrap();
        for x in sample_points(&jump_loci(&c).unwrap(), 20, 5).unwrap() {
            let moved = x.scale(&lambda, QQ).unwrap();
            assert_eq!(
                fiber_betti(&t, &x).unwrap().betti,
                fiber_betti(&c, &moved).unwrap().betti
            );
        }
    }
}

#[test]
fn fiberwise_euler_constancy() {
    for (name, c) in corpus() {
        for x in sample_points(&jump_loci(&c).unwrap(), 30, 11).unwrap() {
            assert_eq!(
                fiber_betti(&c, &x).unwrap().euler_characteristic(),
                c.euler_characteristic(),
                "{name} at {x}"
            );
        }
    }
}

/// `J^i` from the block-diagonal matrix, with every minor enumerated.
fn jumping_ideal_by_enumeration(c: &FreeComplex, i: i64) -> Ideal {
    let block = c
        .differential(i - 1)
        .block_diagonal(&c.differential(i))
        .unwrap();
    let raw = block
        .determinantal_ideal_with(c.rank(i), &Limits::default())
        .unwrap();
    if raw.is_zero_ideal() {
        raw
    } else {
        raw.saturate_torus().unwrap()
    }
}

#[test]
fn jumping_ideal_matches_exhaustive_minors() {
    for (name, c) in corpus() {
        let small = c
            .differentials()
            .iter()
            .all(|d| d.rows() <= 4 && d.cols() <= 4);
        if !small {
            continue;
        }
        for i in c.degrees() {
            let fast = jumping_ideal(&c, i, &Limits::default()).unwrap();
            let slow = jumping_ideal_by_enumeration(&c, i);
            assert!(fast.same_ideal(&slow).unwrap(), "{name} degree {i}");
        }
    }
}

#[test]
fn fitting_ideal_of_an_empty_differential_is_the_unit_ideal() {
    let c = koszul_torus(2, QQ).unwrap();
    for i in [-1, 2, 7] {
        assert!(fitting_ideal(&c, i, &Limits::default())
            .unwrap()
            .is_unit()
            .unwrap());
    }
}

/// Points where every differential has its generic rank.
fn generic_points(c: &FreeComplex, points: Vec<TorusPoint>) -> Vec<TorusPoint> {
    let lim = Limits::default();
    points
        .into_iter()
        .filter(|x| {
            c.degrees().all(|i| {
                c.differential(i).rank_at(x).unwrap() == c.differential(i).rank_with(&lim).unwrap()
            })
        })
        .collect()
}

#[test]
fn acyclicity_agrees_with_generic_fibers() {
    let lim = Limits::default();
    for (name, c) in corpus() {
        let n = c.hi();
        let verdict = acyclic_off_top(&c, n, &lim).unwrap();
        let pts = generic_points(&c, sample_points(&jump_loci(&c).unwrap(), 64, 13).unwrap());
        assert!(pts.len() >= 20, "{name}: {} generic points", pts.len());
        let bettis: Vec<_> = pts.iter().map(|x| fiber_betti(&c, x).unwrap()).collect();
        match verdict.witness() {
            None => {
                for b in &bettis {
                    assert!(
                        c.degrees().filter(|&i| i != n).all(|i| b.get(i) == 0),
                        "{name} at {}",
                        b.point
                    );
                }
            }
            Some(w) if w.clause == AcyclicityClause::RankAdditivity => {
                assert!(bettis.iter().any(|b| b.get(w.degree) > 0), "{name}");
            }
            Some(_) => {}
        }
    }
}

#[test]
fn membership_implies_vanishing_at_common_zeros() {
    let ring = LaurentRing::new(2, QQ).unwrap();
    let ideal = Ideal::parse(ring, &["t1^2 - 3*t1 + 2", "t1*t2 - 2*t2"]).unwrap();
    let members = [
        "t1^2*t2 - 3*t1*t2 + 2*t2",
        "t1^3 - 3*t1^2 + 2*t1 + t1*t2 - 2*t2",
    ];
    // on the torus, V is the line t1 = 2
    let mut pts = sample_points(&jump_loci(&koszul_torus(2, QQ).unwrap()).unwrap(), 40, 2).unwrap();
    pts.extend([-1, 3, 5].map(|y| {
        TorusPoint::Rational(vec![
            num_rational::BigRational::from_integer(2.into()),
            num_rational::BigRational::from_integer(y.into()),
        ])
    }));
    let on_v: Vec<_> = pts
        .iter()
        .filter(|x| {
            ideal
                .generators()
                .iter()
                .all(|g| g.evaluate(x).unwrap().is_zero())
        })
        .collect();
    assert!(on_v.len() >= 3);
    for m in members {
        let f = Polynomial::parse(ring, m).unwrap();
        assert!(ideal.contains(&f).unwrap());
        assert!(on_v.iter().all(|x| f.evaluate(x).unwrap().is_zero()));
    }
}

#[test]
fn variety_containment_is_reflexive_and_transitive() {
    let ring = LaurentRing::new(3, QQ).unwrap();
    let ideals: Vec<Ideal> = [
        vec!["t1 - 1", "t2 - 1", "t3 - 1"],
        vec!["t1 - 1", "t2 - 1"],
        vec!["t1 - 1"],
        vec!["t1^2 - 2*t1 + 1", "t2 - 1"],
        vec!["t1*t2 - t1 - t2 + 1"],
        vec![],
    ]
    .iter()
    .map(|g| Ideal::parse(ring, g).unwrap())
    .collect();
    let n = ideals.len();
    let mut rel = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            rel[a][b] = ideals[a].variety_contained_in(&ideals[b]).unwrap();
        }
    }
    for a in 0..n {
        assert!(rel[a][a]);
        for b in 0..n {
            for c in 0..n {
                if rel[a][b] && rel[b][c] {
                    assert!(rel[a][c], "{a} {b} {c}");
                }
            }
        }
    }
    assert!(rel[0][2] && !rel[2][0] && rel[1][3] && rel[3][1]);
}

#[test]
fn saturation_is_unit_exactly_when_the_torus_misses_the_locus() {
    let ring = LaurentRing::new(2, QQ).unwrap();
    for (gens, misses) in [
        (vec!["t1*t2"], true),
        (vec!["t1", "t2 - 1"], true),
        (vec!["t1^2 - t1"], false),
        (vec!["t1*t2 - t2", "t2^2 - t2"], false),
    ] {
        let i = Ideal::parse(ring, &gens).unwrap();
        let s = i.saturate_torus().unwrap();
        assert!(s.contains_ideal(&i).unwrap());
        assert_eq!(s.is_unit().unwrap(), misses, "{gens:?}");
        if !misses {
            // a torus point of V(I) exists: t1 = t2 = 1 works for both
            let one = TorusPoint::trivial(QQ, 2);
            assert!(i
                .generators()
                .iter()
                .all(|g| g.evaluate(&one).unwrap().is_zero()));
            assert!(s
                .generators()
                .iter()
                .all(|g| g.evaluate(&one).unwrap().is_zero()));
        }
    }
}

#[test]
fn reduced_bases_ignore_presentation() {
    let ring = LaurentRing::new(3, QQ).unwrap();
    let a = Ideal::parse(ring, &["t1*t2 - t3", "t2*t3 - t1", "t1*t3 - t2"]).unwrap();
    let b = Ideal::parse(
        ring,
        &["t1*t3 - t2", "t1*t2 - t3 + t1*t3 - t2", "t2*t3 - t1"],
    )
    .unwrap();
    assert_eq!(
        a.groebner_basis(MonomialOrder::DegRevLex).unwrap(),
        b.groebner_basis(MonomialOrder::DegRevLex).unwrap()
    );
}

#[test]
fn block_diagonal_shapes() {
    let ring = LaurentRing::new(1, QQ).unwrap();
    let a = PolyMatrix::parse(ring, &[&["t1 - 1"]]).unwrap();
    let b = PolyMatrix::zeros(ring, 0, 1);
    assert_eq!(a.block_diagonal(&b).unwrap().shape(), (1, 2));
}

#[test]
fn reduction_mod_p_of_integer_complexes() {
    let c = koszul_torus(3, ZZ).unwrap();
    for p in [2, 3, 5] {
        let r = c.reduce_coefficients(fp(p)).unwrap();
        assert!(acyclic_off_top(&r, 3, &Limits::default())
            .unwrap()
            .is_acyclic());
    }
}
