use serde_json::{json, Value};

use super::{fiber_betti, IndexingMode, PropertyRecord, Status, VerificationReport};
use crate::chaincx::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::jumploci::JumpLocusSet;
use crate::ring::TorusPoint;

const NEEDS_COMPONENTS: &str = "needs component data; use verify_components";

fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn codim_json(l: &JumpLocusSet, j: i64) -> Value {
    match l.dimension(j).codim() {
        Some(c) => json!(c),
        None => json!("empty"),
    }
}

/// Checks (i), (ii), (iv), (v) and (vi) on the loci, in the labels of
/// `mode`. Component-level statements are reported as skipped.
pub fn verify_propagation(l: &JumpLocusSet, mode: IndexingMode) -> Result<VerificationReport> {
    let top = mode.top(l.lo(), l.hi())?;
    let label = |j: i64| mode.label(j, top);
    let mut report = VerificationReport {
        mode,
        properties: Vec::new(),
    };

    // (i) V^{top-k-1} ⊆ V^{top-k}
    let mut chain = Vec::new();
    let mut fail = None;
    for j in (l.lo()..=top).rev() {
        let ok = l.ideal(j - 1).variety_contained_in(&l.ideal(j))?;
        chain.push(json!([label(j), label(j - 1)]));
        if !ok && fail.is_none() {
            fail = Some(json!({ "not_contained": label(j - 1), "in": label(j) }));
        }
    }
    report.set(
        "i",
        match fail {
            Some(w) => PropertyRecord::new(Status::Fail, w),
            None => PropertyRecord::new(Status::Pass, json!({ "containments": chain })),
        },
    );

    // (ii) codim V^{top-k} >= k
    let mut rows = Vec::new();
    let mut fail = None;
    for k in 0..=(top - l.lo()) {
        let j = top - k;
        let ok = l.dimension(j).codim_at_least(k as usize);
        rows.push(json!({ "degree": label(j), "codim": codim_json(l, j), "bound": k }));
        if !ok && fail.is_none() {
            fail = Some(json!({ "degree": label(j), "codim": codim_json(l, j), "bound": k }));
        }
    }
    report.set(
        "ii",
        match fail {
            Some(w) => PropertyRecord::new(Status::Fail, w),
            None => PropertyRecord::new(Status::Pass, json!({ "codims": rows })),
        },
    );

    report.set("iii", PropertyRecord::skipped(NEEDS_COMPONENTS));
    report.set("iv", check_iv(l, top, &label)?);
    report.set("iv_purity", PropertyRecord::skipped(NEEDS_COMPONENTS));

    // (v) every V^j, j != top, is a proper subvariety
    let mut fail = None;
    for j in l.lo()..=l.hi() {
        if j != top && !l.dimension(j).codim_at_least(1) {
            fail = Some(json!({ "degree": label(j), "codim": 0 }));
            break;
        }
    }
    report.set(
        "v",
        match fail {
            Some(w) => PropertyRecord::new(Status::Fail, w),
            None => PropertyRecord::new(Status::Pass, json!({ "proper_below_top": true })),
        },
    );

    // (vi) (-1)^top χ >= 0, zero exactly when V^top is not everything
    let s = sign(top) * l.euler_characteristic();
    let whole = l.get(top).is_some_and(|d| d.is_whole_torus());
    let ok = s >= 0 && ((s == 0) == !whole);
    report.set(
        "vi",
        PropertyRecord::new(
            Status::from_bool(ok),
            json!({ "signed_euler": s, "top_is_whole_torus": whole }),
        ),
    );
    Ok(report)
}

fn check_iv(l: &JumpLocusSet, top: i64, label: &dyn Fn(i64) -> i64) -> Result<PropertyRecord> {
    let d = match l.dimension(top).codim() {
        Some(d) => d as i64,
        None => {
            return Ok(PropertyRecord::new(
                Status::Pass,
                json!({ "top_empty": true }),
            ))
        }
    };
    let top_ideal = l.ideal(top);
    for k in 1..=d {
        if !top_ideal.same_variety(&l.ideal(top - k))? {
            return Ok(PropertyRecord::new(
                Status::Fail,
                json!({ "d": d, "differs": [label(top), label(top - k)] }),
            ));
        }
    }
    let strict = !l.ideal(top - d).same_variety(&l.ideal(top - d - 1))?;
    Ok(PropertyRecord::new(
        Status::from_bool(strict),
        json!({ "d": d, "equal_down_to": label(top - d), "strict_at": label(top - d - 1) }),
    ))
}

/// Checks user-supplied components of the top locus: they cover it, each of
/// codimension `d` lies in `V^{top-d}`, and purity when the codimension
/// hypothesis holds. Returns the records `cover`, `iii` and `iv_purity`.
pub fn verify_components(
    l: &JumpLocusSet,
    mode: IndexingMode,
    components: &[Ideal],
) -> Result<VerificationReport> {
    let top = mode.top(l.lo(), l.hi())?;
    let label = |j: i64| mode.label(j, top);
    let mut comps = Vec::with_capacity(components.len());
    for p in components {
        if p.ring() != l.ring() {
            return Err(Error::RingMismatch(format!(
                "component over {}, loci over {}",
                p.ring(),
                l.ring()
            )));
        }
        comps.push(if p.is_zero_ideal() {
            p.clone()
        } else {
            p.saturate_torus()?
        });
    }
    let mut report = VerificationReport {
        mode,
        properties: Vec::new(),
    };
    let top_ideal = l.ideal(top);

    // cover: each V(P) ⊆ V^top and V^top ⊆ ∪ V(P)
    let mut cover_fail = None;
    for (k, p) in comps.iter().enumerate() {
        if !p.variety_contained_in(&top_ideal)? {
            cover_fail = Some(json!({ "component": k, "not_in_top_locus": true }));
            break;
        }
    }
    if cover_fail.is_none() {
        let mut union = Ideal::unit(l.ring());
        for p in &comps {
            union = union.product(p)?;
        }
        if !top_ideal.variety_contained_in(&union)? {
            cover_fail = Some(json!({ "top_locus_not_covered": true }));
        }
    }
    report.set(
        "cover",
        match cover_fail {
            Some(w) => PropertyRecord::new(Status::Fail, w),
            None => PropertyRecord::new(Status::Pass, json!({ "components": comps.len() })),
        },
    );

    // (iii) V(P) ⊆ V^{top-d} for d = codim P
    let mut rows = Vec::new();
    let mut codims = Vec::new();
    let mut fail = None;
    for (k, p) in comps.iter().enumerate() {
        let d = match p.dimension()?.codim() {
            Some(d) => d as i64,
            None => {
                fail.get_or_insert(json!({ "component": k, "empty_on_torus": true }));
                continue;
            }
        };
        codims.push(d);
        let ok = p.variety_contained_in(&l.ideal(top - d))?;
        rows.push(json!({ "component": k, "codim": d, "in": label(top - d) }));
        if !ok {
            fail.get_or_insert(json!({ "component": k, "codim": d, "not_in": label(top - d) }));
        }
    }
    report.set(
        "iii",
        match fail {
            Some(w) => PropertyRecord::new(Status::Fail, w),
            None => PropertyRecord::new(Status::Pass, json!({ "containments": rows })),
        },
    );

    // purity: if codim V^{top-k} > k for every k > d then all components share
    // one codimension
    let pure = codims.windows(2).all(|w| w[0] == w[1]);
    let record = match l.dimension(top).codim() {
        None => PropertyRecord::new(Status::Pass, json!({ "top_empty": true })),
        Some(d) => {
            let d = d as i64;
            let hypothesis =
                ((d + 1)..=(top - l.lo() + 1)).all(|k| match l.dimension(top - k).codim() {
                    None => true,
                    Some(c) => c as i64 > k,
                });
            let status = Status::from_bool(!hypothesis || pure);
            PropertyRecord::new(
                status,
                json!({ "hypothesis": hypothesis, "pure_dimensional": pure, "codims": codims }),
            )
        }
    };
    report.set("iv_purity", record);
    Ok(report)
}

/// Betti-number bounds at the trivial character for a space of dimension
/// `n` with semi-smallness defect `r`: `b_i > 0` for `0 <= i <= n - r`,
/// `b_1 >= n - r`, and `(-1)^n χ >= 0` when `r = 0`.
pub fn betti_bounds(c: &FreeComplex, n: i64, r: i64) -> Result<VerificationReport> {
    let point = TorusPoint::trivial(c.ring().coeff(), c.ring().num_vars());
    let b = fiber_betti(c, &point)?;
    let mut report = VerificationReport {
        mode: IndexingMode::Space(n),
        properties: Vec::new(),
    };
    let m = n - r;
    let zero = (0..=m).find(|&i| b.get(i) == 0);
    let listed: Vec<usize> = (0..=m.max(-1)).map(|i| b.get(i)).collect();
    report.set(
        "betti_positive",
        PropertyRecord::new(
            Status::from_bool(zero.is_none()),
            match zero {
                Some(i) => json!({ "degree": i, "betti": 0 }),
                None => json!({ "betti": listed }),
            },
        ),
    );
    let b1 = b.get(1) as i64;
    report.set(
        "b1",
        PropertyRecord::new(Status::from_bool(b1 >= m), json!({ "b1": b1, "bound": m })),
    );
    if r == 0 {
        let s = sign(n) * c.euler_characteristic();
        report.set(
            "signed_euler",
            PropertyRecord::new(Status::from_bool(s >= 0), json!({ "signed_euler": s })),
        );
    } else {
        report.set(
            "signed_euler",
            PropertyRecord::skipped("only stated for r = 0"),
        );
    }
    Ok(report)
}
