//! Bundled systems and their generator families: the electron-MHD vorticity
//! system, the drift-wave (vorticity transport) system with its conditional
//! generators, the truncated moment chain of the electrostatic kinetic
//! model, and the moment-coupled kinetic system.

use symkernel::{
    ArbFunc, Expr, PdeSystem, RewriteSet, Rule, Scope, Symbol,
};

use crate::error::CheckError;
use crate::generator::Generator;

fn rule(lhs: Expr, rhs: Expr) -> Rule {
    let coord = lhs.as_single_coordinate().expect("rule left side is a coordinate");
    Rule { lhs: coord, rhs }
}

/// Cross product of two expression triples.
fn cross(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Curl of an expression triple by total derivatives.
fn curl(w: &[Expr; 3], x: &Symbol, y: &Symbol, z: &Symbol) -> [Expr; 3] {
    [
        &w[2].diff(y) - &w[1].diff(z),
        &w[0].diff(z) - &w[2].diff(x),
        &w[1].diff(x) - &w[0].diff(y),
    ]
}

fn laplacian(f: &Expr, vars: &[&Symbol]) -> Expr {
    let mut out = Expr::zero();
    for v in vars {
        out = &out + &f.diff(v).diff(v);
    }
    out
}

/// Electron-MHD in nine dependent fields: generalized vorticity transport
/// `S_t = curl(v x S)` with `S = B - lap(B)`, `v = -curl(B)` and `div B = 0`.
/// Rewrite order: v-components, then S-components, then `B3_z` from the
/// divergence constraint, then the `S_t` evolution rules.
pub fn emhd_system() -> PdeSystem {
    let mut scope = Scope::new();
    let t = scope.independent("t").unwrap();
    let x = scope.independent("x").unwrap();
    let y = scope.independent("y").unwrap();
    let z = scope.independent("z").unwrap();
    let psi: Vec<Symbol> = (1..=3).map(|i| scope.dependent(&format!("Psi{i}")).unwrap()).collect();
    let v: Vec<Symbol> = (1..=3).map(|i| scope.dependent(&format!("v{i}")).unwrap()).collect();
    let b: Vec<Symbol> = (1..=3).map(|i| scope.dependent(&format!("B{i}")).unwrap()).collect();
    for p in ["n1", "n2", "n3"] {
        scope.parameter(p).unwrap();
    }

    let se = |s: &Symbol| Expr::sym(s);
    let psi_e = [se(&psi[0]), se(&psi[1]), se(&psi[2])];
    let v_e = [se(&v[0]), se(&v[1]), se(&v[2])];
    let b_e = [se(&b[0]), se(&b[1]), se(&b[2])];
    let spatial = [&x, &y, &z];

    let nonlinear = curl(&cross(&v_e, &psi_e), &x, &y, &z);
    let curl_b = curl(&b_e, &x, &y, &z);

    let mut equations = Vec::new();
    for i in 0..3 {
        equations.push(&psi_e[i].diff(&t) - &nonlinear[i]);
    }
    for i in 0..3 {
        equations.push(&(&psi_e[i] - &b_e[i]) + &laplacian(&b_e[i], &spatial));
    }
    for i in 0..3 {
        equations.push(&v_e[i] + &curl_b[i]);
    }
    let div_b = &(&b_e[0].diff(&x) + &b_e[1].diff(&y)) + &b_e[2].diff(&z);
    equations.push(div_b);

    let mut rules = Vec::new();
    for i in 0..3 {
        rules.push(rule(v_e[i].clone(), -&curl_b[i]));
    }
    for i in 0..3 {
        rules.push(rule(psi_e[i].clone(), &b_e[i] - &laplacian(&b_e[i], &spatial)));
    }
    rules.push(rule(
        b_e[2].diff(&z),
        -&(&b_e[0].diff(&x) + &b_e[1].diff(&y)),
    ));
    for i in 0..3 {
        rules.push(rule(psi_e[i].diff(&t), nonlinear[i].clone()));
    }

    PdeSystem::new("emhd", scope, equations, RewriteSet::new(rules)).unwrap()
}

/// Generator ids: `x1`..`x4` translations, `x5` the t-scaling, `x6` the
/// rotation with its three angular components weighted by the parameters
/// n1, n2, n3 (residuals are linear in the generator, so checking the
/// generic combination checks all three rotations at once).
pub fn emhd_generator(sys: &PdeSystem, id: &str) -> Result<Generator, CheckError> {
    let s = |name: &str| sys.scope.lookup(name).unwrap().clone();
    let (t, x, y, z) = (s("t"), s("x"), s("y"), s("z"));
    let coords = [x.clone(), y.clone(), z.clone()];
    let triple = |base: &str| -> [Symbol; 3] {
        [s(&format!("{base}1")), s(&format!("{base}2")), s(&format!("{base}3"))]
    };
    let (psi, v, b) = (triple("Psi"), triple("v"), triple("B"));
    let g = match id {
        "x1" => Generator::new("X1").with_xi(&t, Expr::one()),
        "x2" => Generator::new("X2").with_xi(&x, Expr::one()),
        "x3" => Generator::new("X3").with_xi(&y, Expr::one()),
        "x4" => Generator::new("X4").with_xi(&z, Expr::one()),
        "x5" => {
            let mut g = Generator::new("X5").with_xi(&t, Expr::sym(&t));
            for f in psi.iter().chain(v.iter()).chain(b.iter()) {
                g = g.with_eta(f, -&Expr::sym(f));
            }
            g
        }
        "x6" => {
            let n = [s("n1"), s("n2"), s("n3")];
            let ne = [Expr::sym(&n[0]), Expr::sym(&n[1]), Expr::sym(&n[2])];
            let re = [Expr::sym(&x), Expr::sym(&y), Expr::sym(&z)];
            let mut g = Generator::new("X6");
            let rot = cross(&ne, &re);
            for (i, c) in coords.iter().enumerate() {
                g = g.with_xi(c, rot[i].clone());
            }
            for fields in [&psi, &v, &b] {
                let fe = [
                    Expr::sym(&fields[0]),
                    Expr::sym(&fields[1]),
                    Expr::sym(&fields[2]),
                ];
                let rotated = cross(&ne, &fe);
                for i in 0..3 {
                    g = g.with_eta(&fields[i], rotated[i].clone());
                }
            }
            g
        }
        other => return Err(CheckError::UnknownId(format!("emhd.{other}"))),
    };
    Ok(g)
}

/// Drift-wave vorticity transport: `S_t + J(P, S) = P_y`, `S = P - lap(P)`
/// for the stream function P and generalized vorticity S.
pub fn hm_system() -> PdeSystem {
    let mut scope = Scope::new();
    let t = scope.independent("t").unwrap();
    let x = scope.independent("x").unwrap();
    let y = scope.independent("y").unwrap();
    let phi = scope.dependent("Phi").unwrap();
    let psi = scope.dependent("Psi").unwrap();

    let (pe, se) = (Expr::sym(&phi), Expr::sym(&psi));
    let jac = &(&pe.diff(&x) * &se.diff(&y)) - &(&se.diff(&x) * &pe.diff(&y));
    let e1 = &(&se.diff(&t) + &jac) - &pe.diff(&y);
    let e2 = &(&se - &pe) + &(&pe.diff(&x).diff(&x) + &pe.diff(&y).diff(&y));

    let rules = vec![
        rule(se.diff(&t), &pe.diff(&y) - &jac),
        rule(se.clone(), &pe - &(&pe.diff(&x).diff(&x) + &pe.diff(&y).diff(&y))),
    ];

    PdeSystem::new("hm", scope, vec![e1, e2], RewriteSet::new(rules)).unwrap()
}

/// Conditional generators for `hm_system` with their side conditions:
/// `x1` is the x-scaling valid on `Phi_xx = 0`; `x2` the (t,y)-scaling
/// valid on `Phi_yy = 0`. `xbad` is the deliberately broken lone x-scaling.
pub fn hm_generator(sys: &PdeSystem, id: &str) -> Result<(Generator, Vec<Expr>), CheckError> {
    let s = |name: &str| sys.scope.lookup(name).unwrap().clone();
    let (t, x, y, phi, psi) = (s("t"), s("x"), s("y"), s("Phi"), s("Psi"));
    match id {
        "x1" => {
            let g = Generator::new("X1")
                .with_xi(&x, Expr::sym(&x))
                .with_eta(&phi, Expr::sym(&phi))
                .with_eta(&psi, Expr::sym(&psi));
            Ok((g, vec![Expr::deriv(&phi, &[&x, &x])]))
        }
        "x2" => {
            let g = Generator::new("X2")
                .with_xi(&t, Expr::sym(&t))
                .with_xi(&y, Expr::sym(&y));
            Ok((g, vec![Expr::deriv(&phi, &[&y, &y])]))
        }
        "xbad" => Ok((Generator::new("Xbad").with_xi(&x, Expr::sym(&x)), Vec::new())),
        other => Err(CheckError::UnknownId(format!("hm.{other}"))),
    }
}

/// Truncated moment chain of the electrostatic kinetic model with
/// truncation order `n`: fields E, M0..M_{n+1}, rows
/// `Mk_t + M{k+1}_x + k E M{k-1} = 0` for k = 0..n and the field equation
/// `E_x = 1 - M0`. Arbitrary functions F(t), G(t) are declared for the
/// top-moment generator family.
pub fn moment_system(n: u32) -> PdeSystem {
    let mut scope = Scope::new();
    let t = scope.independent("t").unwrap();
    let x = scope.independent("x").unwrap();
    let e_field = scope.dependent("E").unwrap();
    let m: Vec<Symbol> = (0..=n + 1)
        .map(|k| scope.dependent(&format!("M{k}")).unwrap())
        .collect();
    scope.function("F", &[&t]).unwrap();
    scope.function("G", &[&t]).unwrap();

    let me: Vec<Expr> = m.iter().map(Expr::sym).collect();
    let ee = Expr::sym(&e_field);

    let mut equations = Vec::new();
    let mut rules = Vec::new();
    for k in 0..=n as usize {
        let mut row = &me[k].diff(&t) + &me[k + 1].diff(&x);
        if k >= 1 {
            row = &row + &(&(&Expr::from_int(k as i64) * &ee) * &me[k - 1]);
        }
        equations.push(row.clone());
        let rhs = &me[k].diff(&t) - &row;
        rules.push(rule(me[k].diff(&t), rhs));
    }
    let poisson = &(&ee.diff(&x) - &Expr::one()) + &me[0];
    equations.push(poisson);
    rules.push(rule(ee.diff(&x), &Expr::one() - &me[0]));

    PdeSystem::new(&format!("moments-n{n}"), scope, equations, RewriteSet::new(rules)).unwrap()
}

/// Generators of the moment chain: `x1`, `x2` translations, `x3` the
/// scaling, `x4`/`x5` the oscillating pair with the k M_{k-1} ladder, and
/// `xfgn`, which feeds the two top moments with arbitrary F(t), G(t).
#[allow(clippy::needless_range_loop)]
pub fn moment_generator(sys: &PdeSystem, n: u32, id: &str) -> Result<Generator, CheckError> {
    let s = |name: &str| sys.scope.lookup(name).unwrap().clone();
    let (t, x, e_field) = (s("t"), s("x"), s("E"));
    let m: Vec<Symbol> = (0..=n + 1).map(|k| s(&format!("M{k}"))).collect();
    let cos_t = Expr::cos_of(&Expr::sym(&t)).unwrap();
    let sin_t = Expr::sin_of(&Expr::sym(&t)).unwrap();

    let g = match id {
        "x1" => Generator::new("X1").with_xi(&t, Expr::one()),
        "x2" => Generator::new("X2").with_xi(&x, Expr::one()),
        "x3" => {
            let mut g = Generator::new("X3")
                .with_xi(&x, Expr::sym(&x))
                .with_eta(&e_field, Expr::sym(&e_field));
            for k in 1..=(n + 1) as usize {
                g = g.with_eta(&m[k], &Expr::from_int(k as i64) * &Expr::sym(&m[k]));
            }
            g
        }
        "x4" => {
            let mut g = Generator::new("X4")
                .with_xi(&x, cos_t.clone())
                .with_eta(&e_field, cos_t.clone());
            for k in 1..=(n + 1) as usize {
                let coeff = -&(&Expr::from_int(k as i64) * &sin_t);
                g = g.with_eta(&m[k], &coeff * &Expr::sym(&m[k - 1]));
            }
            g
        }
        "x5" => {
            let mut g = Generator::new("X5")
                .with_xi(&x, sin_t.clone())
                .with_eta(&e_field, sin_t.clone());
            for k in 1..=(n + 1) as usize {
                let coeff = &Expr::from_int(k as i64) * &cos_t;
                g = g.with_eta(&m[k], &coeff * &Expr::sym(&m[k - 1]));
            }
            g
        }
        "xfgn" => {
            let fd = sys.scope.lookup_function("F").unwrap().clone();
            let gd = sys.scope.lookup_function("G").unwrap().clone();
            let f = Expr::func(ArbFunc::new("F", &fd.args));
            let gfun = Expr::func(ArbFunc::new("G", &gd.args));
            let fprime = f.diff(&t);
            Generator::new("XFGN")
                .with_eta(&m[n as usize], f)
                .with_eta(&m[(n + 1) as usize], &gfun - &(&Expr::sym(&x) * &fprime))
        }
        other => return Err(CheckError::UnknownId(format!("moments.{other}"))),
    };
    Ok(g)
}

/// The moment-coupled kinetic system used to verify the kinetic generator
/// family symbolically: the phase-space advection equation together with
/// the two field rows and the v-independence constraints for E, M0, M1.
pub fn kinetic_system() -> PdeSystem {
    let mut scope = Scope::new();
    let t = scope.independent("t").unwrap();
    let x = scope.independent("x").unwrap();
    let v = scope.independent("v").unwrap();
    let f = scope.dependent("f").unwrap();
    let e_field = scope.dependent("E").unwrap();
    let m0 = scope.dependent("M0").unwrap();
    let m1 = scope.dependent("M1").unwrap();

    let fe = Expr::sym(&f);
    let ee = Expr::sym(&e_field);
    let vlasov = &(&fe.diff(&t) + &(&Expr::sym(&v) * &fe.diff(&x))) - &(&ee * &fe.diff(&v));
    let poisson = &(&ee.diff(&x) - &Expr::one()) + &Expr::sym(&m0);
    let ampere = &ee.diff(&t) - &Expr::sym(&m1);

    let equations = vec![
        vlasov,
        poisson,
        ampere,
        ee.diff(&v),
        Expr::sym(&m0).diff(&v),
        Expr::sym(&m1).diff(&v),
    ];
    let rules = vec![
        rule(fe.diff(&t), &(&ee * &fe.diff(&v)) - &(&Expr::sym(&v) * &fe.diff(&x))),
        rule(ee.diff(&x), &Expr::one() - &Expr::sym(&m0)),
        rule(ee.diff(&t), Expr::sym(&m1)),
        rule(ee.diff(&v), Expr::zero()),
        rule(Expr::sym(&m0).diff(&v), Expr::zero()),
        rule(Expr::sym(&m1).diff(&v), Expr::zero()),
    ];

    PdeSystem::new("kinetic", scope, equations, RewriteSet::new(rules)).unwrap()
}

/// Kinetic generators with their induced actions on the two lowest
/// moments: `x1`, `x2` translations, `x3` the scaling acting on (x, v, E, f),
/// `x4`/`x5` the oscillating pair.
pub fn kinetic_generator(sys: &PdeSystem, id: &str) -> Result<Generator, CheckError> {
    let s = |name: &str| sys.scope.lookup(name).unwrap().clone();
    let (t, x, v) = (s("t"), s("x"), s("v"));
    let (f, e_field, m0, m1) = (s("f"), s("E"), s("M0"), s("M1"));
    let cos_t = Expr::cos_of(&Expr::sym(&t)).unwrap();
    let sin_t = Expr::sin_of(&Expr::sym(&t)).unwrap();
    let g = match id {
        "x1" => Generator::new("X1").with_xi(&t, Expr::one()),
        "x2" => Generator::new("X2").with_xi(&x, Expr::one()),
        "x3" => Generator::new("X3")
            .with_xi(&x, Expr::sym(&x))
            .with_xi(&v, Expr::sym(&v))
            .with_eta(&e_field, Expr::sym(&e_field))
            .with_eta(&f, -&Expr::sym(&f))
            .with_eta(&m1, Expr::sym(&m1)),
        "x4" => Generator::new("X4")
            .with_xi(&x, cos_t.clone())
            .with_xi(&v, -&sin_t)
            .with_eta(&e_field, cos_t)
            .with_eta(&m1, &(-&sin_t) * &Expr::sym(&m0)),
        "x5" => Generator::new("X5")
            .with_xi(&x, sin_t.clone())
            .with_xi(&v, cos_t.clone())
            .with_eta(&e_field, sin_t)
            .with_eta(&m1, &cos_t * &Expr::sym(&m0)),
        other => return Err(CheckError::UnknownId(format!("kinetic.{other}"))),
    };
    Ok(g)
}

/// Render a system as a DSL file.
pub fn system_to_dsl(sys: &PdeSystem) -> String {
    let mut out = String::new();
    let names = |syms: &[Symbol]| {
        syms.iter().map(|s| s.name().to_string()).collect::<Vec<_>>().join(" ")
    };
    out.push_str(&format!("# {} system\n", sys.name));
    out.push_str(&format!("independent {}\n", names(&sys.independents)));
    out.push_str(&format!("dependent {}\n", names(&sys.dependents)));
    let params = sys.scope.parameters();
    if !params.is_empty() {
        out.push_str(&format!("parameter {}\n", names(&params)));
    }
    for f in sys.scope.functions() {
        let args: Vec<String> = f.args.iter().map(|a| a.name().to_string()).collect();
        out.push_str(&format!("function {}({})\n", f.name, args.join(", ")));
    }
    for eq in &sys.equations {
        out.push_str(&format!("eq: {} = 0\n", eq));
    }
    for r in &sys.rules.rules {
        out.push_str(&format!(
            "solve: {} = {}\n",
            symkernel::Expr::deriv_coord(r.lhs.clone()),
            r.rhs
        ));
    }
    out
}

/// Render a generator as a DSL file.
pub fn generator_to_dsl(g: &Generator) -> String {
    let mut out = format!("generator {}\n", g.label);
    for (var, e) in &g.xi {
        out.push_str(&format!("xi {} = {}\n", var.name(), e));
    }
    for (field, e) in &g.eta {
        out.push_str(&format!("eta {} = {}\n", field.name(), e));
    }
    out
}

/// Render side conditions as a DSL file.
pub fn side_to_dsl(conds: &[Expr]) -> String {
    let mut out = String::new();
    for c in conds {
        out.push_str(&format!("eq: {} = 0\n", c));
    }
    out
}
