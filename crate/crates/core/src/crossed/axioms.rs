use super::PreCrossedDatum;
use crate::algebra;
use crate::report::{AxiomReport, Recorder};
use crate::scalar::vector::{add, neg, sub, zeros};

/// Axioms H0-H7: `P x V` with the crossed multiplication is associative,
/// given that `P` is.
pub fn check_hochschild(d: &PreCrossedDatum) -> AxiomReport {
    let mut rec = Recorder::new(false);
    hochschild(d, &mut rec);
    rec.finish()
}

/// Axioms L0-L4: `P x V` with the crossed bracket is a Lie algebra, given
/// that `P` is.
pub fn check_lie_crossed(d: &PreCrossedDatum) -> AxiomReport {
    let mut rec = Recorder::new(false);
    lie_crossed(d, &mut rec);
    rec.finish()
}

/// The full battery: `P` and `V` are Poisson algebras, H0-H7, L0-L4 and the
/// compatibilities P1-P7. Passes exactly when the crossed product is a
/// Poisson algebra.
pub fn check_crossed_system(d: &PreCrossedDatum) -> AxiomReport {
    let mut rec = Recorder::new(false);
    crossed_system(d, &mut rec);
    rec.finish()
}

/// Short-circuiting form of [`check_crossed_system`].
pub fn is_crossed_system(d: &PreCrossedDatum) -> bool {
    let mut rec = Recorder::new(true);
    crossed_system(d, &mut rec);
    rec.report.passed()
}

fn crossed_system(d: &PreCrossedDatum, rec: &mut Recorder) {
    let mut base = Recorder::new(rec.stops_early());
    algebra::poisson(d.p(), &mut base);
    for mut v in base.finish().violations {
        v.axiom = match v.axiom {
            "assoc" => "base-assoc",
            "lie-alt" => "base-lie-alt",
            "lie-antisym" => "base-lie-antisym",
            "jacobi" => "base-jacobi",
            _ => "base-leibniz",
        };
        if !rec.check(v.axiom, &v.indices, v.lhs, v.rhs) {
            return;
        }
    }
    if rec.done() {
        return;
    }
    hochschild(d, rec);
    if rec.done() {
        return;
    }
    lie_crossed(d, rec);
    if rec.done() {
        return;
    }
    let mut vl = Recorder::new(rec.stops_early());
    algebra::leibniz_only(&d.v_algebra(), &mut vl);
    for v in vl.finish().violations {
        if !rec.check("V-leibniz", &v.indices, v.lhs, v.rhs) {
            return;
        }
    }
    compatibilities(d, rec);
}

fn hochschild(d: &PreCrossedDatum, rec: &mut Recorder) {
    let (mp, np) = (d.dim_p(), d.dim_v());
    let t = d.tables();
    let (m, l, r, th, vm) = (d.p().mul(), &t.act_l, &t.act_r, &t.theta, &t.v_mul);

    let mut h0 = Recorder::new(rec.stops_early());
    algebra::associativity_only(&d.v_algebra(), &mut h0);
    for v in h0.finish().violations {
        if !rec.check("H0", &v.indices, v.lhs, v.rhs) {
            return;
        }
    }
    for x in 0..np {
        for y in 0..np {
            for p in 0..mp {
                let ix = [x, y, p];
                if !rec.check("H1", &ix, r.rv(vm.entry(x, y), p), vm.lv(x, r.entry(y, p)))
                    || !rec.check("H2", &ix, vm.rv(r.entry(x, p), y), vm.lv(x, l.entry(p, y)))
                    || !rec.check("H3", &[p, x, y], l.lv(p, vm.entry(x, y)), vm.rv(l.entry(p, x), y))
                {
                    return;
                }
            }
        }
    }
    for p in 0..mp {
        for x in 0..np {
            for q in 0..mp {
                if !rec.check("H4", &[p, x, q], r.rv(l.entry(p, x), q), l.lv(p, r.entry(x, q))) {
                    return;
                }
            }
        }
    }
    for p in 0..mp {
        for q in 0..mp {
            for s in 0..mp {
                // theta(p,q) <- r = theta(p,qr) - theta(pq,r) + p -> theta(q,r)
                let rhs = add(
                    &sub(&th.lv(p, m.entry(q, s)), &th.rv(m.entry(p, q), s)),
                    &l.lv(p, th.entry(q, s)),
                );
                if !rec.check("H5", &[p, q, s], r.rv(th.entry(p, q), s), rhs) {
                    return;
                }
            }
            for x in 0..np {
                // (pq) -> x = p -> (q -> x) - theta(p,q).x
                let rhs = sub(&l.lv(p, l.entry(q, x)), &vm.rv(th.entry(p, q), x));
                if !rec.check("H6", &[p, q, x], l.rv(m.entry(p, q), x), rhs) {
                    return;
                }
                // x <- (pq) = (x <- p) <- q - x.theta(p,q)
                let rhs = sub(&r.rv(r.entry(x, p), q), &vm.lv(x, th.entry(p, q)));
                if !rec.check("H7", &[x, p, q], r.lv(x, m.entry(p, q)), rhs) {
                    return;
                }
            }
        }
    }
}

fn lie_crossed(d: &PreCrossedDatum, rec: &mut Recorder) {
    let (mp, np) = (d.dim_p(), d.dim_v());
    let t = d.tables();
    let (b, lie, f, vb) = (d.p().bracket(), &t.act_lie, &t.eff, &t.v_bracket);
    let field = d.field();

    let mut l0 = Recorder::new(rec.stops_early());
    algebra::lie_only(&d.v_algebra(), &mut l0);
    for v in l0.finish().violations {
        if !rec.check("L0", &v.indices, v.lhs, v.rhs) {
            return;
        }
    }
    for p in 0..mp {
        if !rec.check("L1", &[p, p], f.entry(p, p).to_vec(), zeros(field, np)) {
            return;
        }
        for q in p + 1..mp {
            if !rec.check("L1", &[p, q], f.entry(p, q).to_vec(), neg(f.entry(q, p))) {
                return;
            }
        }
    }
    for p in 0..mp {
        for x in 0..np {
            for y in 0..np {
                // p |> [x,y] = [p |> x, y] + [x, p |> y]
                let rhs = add(&vb.rv(lie.entry(p, x), y), &vb.lv(x, lie.entry(p, y)));
                if !rec.check("L2", &[p, x, y], lie.lv(p, vb.entry(x, y)), rhs) {
                    return;
                }
            }
        }
    }
    for p in 0..mp {
        for q in 0..mp {
            for x in 0..np {
                // [p,q] |> x = p |> (q |> x) - q |> (p |> x) + [x, f(p,q)]
                let rhs = add(
                    &sub(&lie.lv(p, lie.entry(q, x)), &lie.lv(q, lie.entry(p, x))),
                    &vb.lv(x, f.entry(p, q)),
                );
                if !rec.check("L3", &[p, q, x], lie.rv(b.entry(p, q), x), rhs) {
                    return;
                }
            }
        }
    }
    for p in 0..mp {
        for q in 0..mp {
            for r in 0..mp {
                let mut s = f.lv(p, b.entry(q, r));
                s = add(&s, &f.lv(q, b.entry(r, p)));
                s = add(&s, &f.lv(r, b.entry(p, q)));
                s = add(&s, &lie.lv(p, f.entry(q, r)));
                s = add(&s, &lie.lv(q, f.entry(r, p)));
                s = add(&s, &lie.lv(r, f.entry(p, q)));
                if !rec.check("L4", &[p, q, r], s, zeros(field, np)) {
                    return;
                }
            }
        }
    }
}

fn compatibilities(d: &PreCrossedDatum, rec: &mut Recorder) {
    let (mp, np) = (d.dim_p(), d.dim_v());
    let t = d.tables();
    let (m, b) = (d.p().mul(), d.p().bracket());
    let (l, r, lie, th, f, vm, vb) = (&t.act_l, &t.act_r, &t.act_lie, &t.theta, &t.eff, &t.v_mul, &t.v_bracket);

    for p in 0..mp {
        for q in 0..mp {
            for s in 0..mp {
                // f(pq,r) - f(p,r) <- q - p -> f(q,r)
                //   = r |> theta(p,q) + theta([p,r],q) + theta(p,[q,r])
                let lhs = sub(&sub(&f.rv(m.entry(p, q), s), &r.rv(f.entry(p, s), q)), &l.lv(p, f.entry(q, s)));
                let rhs = add(
                    &add(&lie.lv(s, th.entry(p, q)), &th.rv(b.entry(p, s), q)),
                    &th.lv(p, b.entry(q, s)),
                );
                if !rec.check("P1", &[p, q, s], lhs, rhs) {
                    return;
                }
            }
            for x in 0..np {
                // (pq) |> x = p -> (q |> x) + (p |> x) <- q - [theta(p,q), x]
                let rhs = sub(
                    &add(&l.lv(p, lie.entry(q, x)), &r.rv(lie.entry(p, x), q)),
                    &vb.rv(th.entry(p, q), x),
                );
                if !rec.check("P2", &[p, q, x], lie.rv(m.entry(p, q), x), rhs) {
                    return;
                }
                // [p,q] -> x = p -> (q |> x) - q |> (p -> x) - f(p,q).x
                let rhs = sub(
                    &sub(&l.lv(p, lie.entry(q, x)), &lie.lv(q, l.entry(p, x))),
                    &vm.rv(f.entry(p, q), x),
                );
                if !rec.check("P3", &[p, q, x], l.rv(b.entry(p, q), x), rhs) {
                    return;
                }
                // x <- [p,q] = (q |> x) <- p - q |> (x <- p) - x.f(p,q)
                let rhs = sub(
                    &sub(&r.rv(lie.entry(q, x), p), &lie.lv(q, r.entry(x, p))),
                    &vm.lv(x, f.entry(p, q)),
                );
                if !rec.check("P5", &[x, p, q], r.lv(x, b.entry(p, q)), rhs) {
                    return;
                }
            }
        }
    }
    for p in 0..mp {
        for x in 0..np {
            for y in 0..np {
                // p -> [x,y] = [p -> x, y] - (p |> y).x
                let rhs = sub(&vb.rv(l.entry(p, x), y), &vm.rv(lie.entry(p, y), x));
                if !rec.check("P4", &[p, x, y], l.lv(p, vb.entry(x, y)), rhs) {
                    return;
                }
                // [x,y] <- p = [x <- p, y] - x.(p |> y)
                let rhs = sub(&vb.rv(r.entry(x, p), y), &vm.lv(x, lie.entry(p, y)));
                if !rec.check("P6", &[x, y, p], r.rv(vb.entry(x, y), p), rhs) {
                    return;
                }
                // p |> (x.y) = (p |> x).y + x.(p |> y)
                let rhs = add(&vm.rv(lie.entry(p, x), y), &vm.lv(x, lie.entry(p, y)));
                if !rec.check("P7", &[p, x, y], lie.lv(p, vm.entry(x, y)), rhs) {
                    return;
                }
            }
        }
    }
}
