//! Exhaustive basis-level checks of the consequences of the defining
//! identities: right nilpotency of index 4, right symmetry, and the operator
//! relations among `R_x`, `L_x` and `V_{x,y}`.
//!
//! Every relation below is multilinear in its parameters, so checking all
//! basis elements decides it for arbitrary elements. Operator relations are
//! reduced to element identities on the subspace the operators are applied to.

use crate::algebra::{unit, Algebra, Subspace};
use crate::linalg::{self, SparseVec};
use crate::report::Check;

fn fmt_vec(alg: &Algebra, v: &SparseVec) -> String {
    alg.format_element(&alg.wrap(v.clone()))
}

fn basis_vecs(alg: &Algebra) -> Vec<SparseVec> {
    (0..alg.dim()).map(|i| unit(alg.field(), i)).collect()
}

/// `((uv)w)t = 0` for all basis `u, v, w, t`.
pub fn check_right_nilpotency(alg: &Algebra) -> Check {
    let e = basis_vecs(alg);
    let mut bad = None;
    'outer: for (u, eu) in e.iter().enumerate() {
        for (v, ev) in e.iter().enumerate() {
            let p = alg.mul_vec(eu, ev);
            if p.is_empty() {
                continue;
            }
            for (w, ew) in e.iter().enumerate() {
                let q = alg.mul_vec(&p, ew);
                if q.is_empty() {
                    continue;
                }
                for (t, et) in e.iter().enumerate() {
                    let r = alg.mul_vec(&q, et);
                    if !r.is_empty() {
                        bad = Some(format!(
                            "(({} {}) {}) {} = {}",
                            alg.name(u),
                            alg.name(v),
                            alg.name(w),
                            alg.name(t),
                            fmt_vec(alg, &r)
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    Check::new("rel.right-nilpotent", "((uv)w)t = 0", bad.is_none()).with_detail(bad.unwrap_or_default())
}

/// `(u,v,w) = (u,w,v)` for all basis `u, v, w`.
pub fn check_right_symmetry(alg: &Algebra) -> Check {
    let e = basis_vecs(alg);
    let assoc = |a: &SparseVec, b: &SparseVec, c: &SparseVec| {
        linalg::difference(&alg.mul_vec(&alg.mul_vec(a, b), c), &alg.mul_vec(a, &alg.mul_vec(b, c)))
    };
    let mut bad = None;
    'outer: for (u, eu) in e.iter().enumerate() {
        for v in 0..e.len() {
            for w in v + 1..e.len() {
                let d = linalg::difference(&assoc(eu, &e[v], &e[w]), &assoc(eu, &e[w], &e[v]));
                if !d.is_empty() {
                    bad = Some(format!(
                        "({0},{1},{2}) - ({0},{2},{1}) = {3}",
                        alg.name(u),
                        alg.name(v),
                        alg.name(w),
                        fmt_vec(alg, &d)
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check::new("rel.right-symmetric", "(u,v,w) = (u,w,v)", bad.is_none()).with_detail(bad.unwrap_or_default())
}

/// `(ab)c + (cb)a = 0` for all basis triples.
pub fn check_linearized_left_nil(alg: &Algebra) -> Check {
    let e = basis_vecs(alg);
    let mut bad = None;
    'outer: for (a, ea) in e.iter().enumerate() {
        for (b, eb) in e.iter().enumerate() {
            for (c, ec) in e.iter().enumerate().skip(a) {
                let s = linalg::sum(
                    &alg.mul_vec(&alg.mul_vec(ea, eb), ec),
                    &alg.mul_vec(&alg.mul_vec(ec, eb), ea),
                );
                if !s.is_empty() {
                    bad = Some(format!(
                        "({0} {1}) {2} + ({2} {1}) {0} = {3}",
                        alg.name(a),
                        alg.name(b),
                        alg.name(c),
                        fmt_vec(alg, &s)
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check::new("rel.linearized-left-nil", "(ab)c + (cb)a = 0", bad.is_none()).with_detail(bad.unwrap_or_default())
}

/// Span of `(x u) y` over basis `x, u, y`: the sum of the images of all `V_{x,y}`.
pub fn v_image(alg: &Algebra) -> Subspace {
    let e = basis_vecs(alg);
    let mut s = alg.zero_subspace();
    for ex in &e {
        for eu in &e {
            let xu = alg.mul_vec(ex, eu);
            if xu.is_empty() {
                continue;
            }
            for ey in &e {
                let v = alg.mul_vec(&xu, ey);
                if !v.is_empty() {
                    s.insert(&alg.wrap(v));
                }
            }
        }
    }
    s
}

/// Checks the operator relations
///
/// 1. `V_{x,x} = 0`, `V_{x,y} = -V_{y,x}`
/// 2. `xR_yL_zL_t = yV_{x,z}L_t - xR_yV_{t,z}`
/// 3. `xR_yL_z = xV_{z,y} + yR_xL_z - yV_{z,x}`
/// 4. `xR_yV_{z,t} = yR_xV_{z,t}`
/// 5. `V_{x,y}R_z = 0`
/// 6. `V_{x,y}(L_zL_t + V_{t,z}) = 0`
///
/// for all basis parameters, returning one check per relation.
pub fn check_operator_relations(alg: &Algebra) -> Vec<Check> {
    let e = basis_vecs(alg);
    let name = |i: usize| alg.name(i).to_string();
    let mul = |a: &SparseVec, b: &SparseVec| alg.mul_vec(a, b);
    let mut out = Vec::new();

    // 1. operators on basis vectors: u V_{x,y} + u V_{y,x} = 0 and u V_{x,x} = 0.
    let mut bad = None;
    'r1: for (x, ex) in e.iter().enumerate() {
        for (u, eu) in e.iter().enumerate() {
            let xu = mul(ex, eu);
            for (y, ey) in e.iter().enumerate().skip(x) {
                let yu = mul(ey, eu);
                let s = linalg::sum(&mul(&xu, ey), &mul(&yu, ex));
                let diag = if x == y { mul(&xu, ex) } else { SparseVec::new() };
                if !s.is_empty() || !diag.is_empty() {
                    bad = Some(format!("{} V({}, {}) fails", name(u), name(x), name(y)));
                    break 'r1;
                }
            }
        }
    }
    out.push(
        Check::new("rel.v-antisymmetric", "V(x,x) = 0, V(x,y) = -V(y,x)", bad.is_none())
            .with_detail(bad.unwrap_or_default()),
    );

    // 2. With u = xy ranging over A², the relation reads
    //    u L_z L_t = u R_z L_t - u L_t R_z, i.e. t(zu) = t(uz) - (tu)z.
    let square = alg.product_span(&alg.whole(), &alg.whole()).expect("same algebra");
    let mut bad = None;
    'r2: for u in square.rows() {
        for (z, ez) in e.iter().enumerate() {
            let zu = mul(ez, &u);
            let uz = mul(&u, ez);
            for (t, et) in e.iter().enumerate() {
                let lhs = mul(et, &zu);
                let rhs = linalg::difference(&mul(et, &uz), &mul(&mul(et, &u), ez));
                if lhs != rhs {
                    bad = Some(format!("u = {}, z = {}, t = {}", fmt_vec(alg, &u), name(z), name(t)));
                    break 'r2;
                }
            }
        }
    }
    out.push(
        Check::new("rel.rll", "xR_yL_zL_t = yV_{x,z}L_t - xR_yV_{t,z}", bad.is_none())
            .with_detail(bad.unwrap_or_default()),
    );

    // 3. z(xy) = (zx)y + z(yx) - (zy)x on basis triples.
    let mut bad = None;
    'r3: for (x, ex) in e.iter().enumerate() {
        for (y, ey) in e.iter().enumerate() {
            let xy = mul(ex, ey);
            let yx = mul(ey, ex);
            for (z, ez) in e.iter().enumerate() {
                let lhs = mul(ez, &xy);
                let mut rhs = mul(&mul(ez, ex), ey);
                rhs = linalg::sum(&rhs, &mul(ez, &yx));
                rhs = linalg::difference(&rhs, &mul(&mul(ez, ey), ex));
                if lhs != rhs {
                    bad = Some(format!("x = {}, y = {}, z = {}", name(x), name(y), name(z)));
                    break 'r3;
                }
            }
        }
    }
    out.push(
        Check::new("rel.rl", "xR_yL_z = xV_{z,y} + yR_xL_z - yV_{z,x}", bad.is_none())
            .with_detail(bad.unwrap_or_default()),
    );

    // 4. [x,y] V_{z,t} = 0 for commutators spanning [A,A].
    let mut comms = alg.zero_subspace();
    for (x, ex) in e.iter().enumerate() {
        for ey in e.iter().skip(x + 1) {
            comms.insert(&alg.wrap(linalg::difference(&mul(ex, ey), &mul(ey, ex))));
        }
    }
    let mut bad = None;
    'r4: for u in comms.rows() {
        for (z, ez) in e.iter().enumerate() {
            let zu = mul(ez, &u);
            if zu.is_empty() {
                continue;
            }
            for (t, et) in e.iter().enumerate() {
                if !mul(&zu, et).is_empty() {
                    bad = Some(format!("[x,y] = {}, z = {}, t = {}", fmt_vec(alg, &u), name(z), name(t)));
                    break 'r4;
                }
            }
        }
    }
    out.push(
        Check::new("rel.rv-symmetric", "xR_yV_{z,t} = yR_xV_{z,t}", bad.is_none())
            .with_detail(bad.unwrap_or_default()),
    );

    // 5 and 6 act on U = Σ Im V_{x,y}.
    let image = v_image(alg);
    let mut bad5 = None;
    let mut bad6 = None;
    for u in image.rows() {
        for (z, ez) in e.iter().enumerate() {
            if bad5.is_none() && !mul(&u, ez).is_empty() {
                bad5 = Some(format!("u = {}, z = {}", fmt_vec(alg, &u), name(z)));
            }
            if bad6.is_some() {
                continue;
            }
            let zu = mul(ez, &u);
            for (t, et) in e.iter().enumerate() {
                let s = linalg::sum(&mul(et, &zu), &mul(&mul(et, &u), ez));
                if !s.is_empty() {
                    bad6 = Some(format!("u = {}, z = {}, t = {}", fmt_vec(alg, &u), name(z), name(t)));
                    break;
                }
            }
        }
    }
    out.push(
        Check::new("rel.vr", "V_{x,y}R_z = 0", bad5.is_none()).with_detail(bad5.unwrap_or_default()),
    );
    out.push(
        Check::new("rel.vll", "V_{x,y}(L_zL_t + V_{t,z}) = 0", bad6.is_none())
            .with_detail(bad6.unwrap_or_default()),
    );
    out
}
