use crate::report::{Report, Table};
use crate::scenario::{
    parse_scenario, Body, ComplexSpec, DescriptorSpec, Flags, InputError, Kind, KirwanBody, LagrangianBody, LocalsysBody, Preset,
    Scenario, TwistSpec,
};
use derint_core::kirwan::{atiyah_bott_certificate, hkkn_stratification, morse_equality_check, semistable_locus, TorusRepresentation};
use derint_core::koszul::{BigradedDimsTable, ExtTable, Window};
use derint_core::lagrangian::{
    build_scenario, canonical_char_check, compare_with_oracle, hessian_torsion_check, Character, IntersectionScenario,
    LagrangianDescriptor, LagrangianError, SymplecticModel, Twist,
};
use derint_core::linalg::{format_rational, PoincareSeries, Q};
use derint_core::localsys::{covering_decomposition_check, torus_seam_system, twisted_cohomology, MonodromyData, SimplicialModel};
use derint_core::polyring::parse_polynomial;
use std::path::Path;
use std::str::FromStr;

pub const DEFAULT_WINDOW: Window = Window { homological: 4, internal: 10 };
pub const DEFAULT_TRUNCATION: usize = 20;

/// Command-line overrides of the values declared in the file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub window: Option<Window>,
    pub truncate: Option<usize>,
}

pub fn run_file(path: &Path, opts: &RunOptions) -> Result<Report, InputError> {
    let label = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|e| InputError(format!("{label}: {e}")))?;
    run_source(&label, &src, opts)
}

pub fn run_source(label: &str, src: &str, opts: &RunOptions) -> Result<Report, InputError> {
    let scenario = parse_scenario(label, src)?;
    run_scenario(label, &scenario, opts)
}

pub fn run_scenario(label: &str, s: &Scenario, opts: &RunOptions) -> Result<Report, InputError> {
    let err = |e: String| InputError(format!("{label}: {e}"));
    match &s.body {
        Body::Lagrangian(b) => {
            let window = opts
                .window
                .or(s.window.map(|w| Window::new(w.homological, w.internal)))
                .unwrap_or(DEFAULT_WINDOW);
            lagrangian(&s.name, b, window, s.flags).map_err(err)
        }
        Body::Kirwan(b) => kirwan(&s.name, b, opts.truncate.or(s.truncate).unwrap_or(DEFAULT_TRUNCATION), s.flags).map_err(err),
        Body::Localsys(b) => localsys(&s.name, b, s.flags).map_err(err),
    }
}

fn record_flags(r: &mut Report, flags: Flags) {
    r.fact("flag proper_over_affine", flags.proper_over_affine);
    r.fact("flag finite_invariants", flags.finite_invariants);
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(r: &mut Report, what: &str, expected: &Option<T>, actual: &T) {
    if let Some(e) = expected {
        let ok = e == actual;
        let details = if ok { vec![] } else { vec![format!("expected {e:?}, found {actual:?}")] };
        r.check(format!("expected {what}"), ok, details);
    }
}

pub fn error_tag(e: &LagrangianError) -> &'static str {
    match e {
        LagrangianError::NotIsotropic(_) => "not_isotropic",
        LagrangianError::WrongDimension { .. } => "wrong_dimension",
        LagrangianError::NotClosedForm(..) => "not_closed_form",
        LagrangianError::NotRegular => "not_regular",
        LagrangianError::NonConstantMoment { .. } => "non_constant_moment",
        LagrangianError::MomentMismatch(..) => "moment_mismatch",
        LagrangianError::IntersectionNotClean(_) => "intersection_not_clean",
        LagrangianError::ExcessRankMismatch { .. } => "excess_rank_mismatch",
        LagrangianError::NotEquivariant(_) => "not_equivariant",
        LagrangianError::OddCanonicalCharacter(_) => "odd_canonical_character",
        LagrangianError::DegenerateHessian { .. } => "degenerate_hessian",
        LagrangianError::NotAGraph => "not_a_graph",
        LagrangianError::CheckFailed(_) => "check_failed",
        LagrangianError::Invalid(_) => "invalid",
        LagrangianError::Poly(_) => "polynomial",
        LagrangianError::Koszul(_) => "koszul",
    }
}

fn descriptor(model: &SymplecticModel, vars: &[String], spec: &DescriptorSpec, which: &str) -> Result<LagrangianDescriptor, String> {
    let poly = |src: &str| parse_polynomial(model.ring(), src).map_err(|e| format!("{which}: {src:?}: {e}"));
    Ok(match spec {
        DescriptorSpec::ZeroSection => LagrangianDescriptor::ZeroSection,
        DescriptorSpec::GraphPotential { potential } => LagrangianDescriptor::GraphPotential(poly(potential)?),
        DescriptorSpec::GraphForm { components } => {
            LagrangianDescriptor::GraphForm(components.iter().map(|c| poly(c)).collect::<Result<_, _>>()?)
        }
        DescriptorSpec::Conormal { coordinates } => LagrangianDescriptor::Conormal(
            coordinates
                .iter()
                .map(|c| vars.iter().position(|v| v == c).ok_or_else(|| format!("{which}: undeclared base coordinate {c:?}")))
                .collect::<Result<_, _>>()?,
        ),
        DescriptorSpec::Linear { vectors } => LagrangianDescriptor::Linear(
            vectors
                .iter()
                .map(|v| v.iter().map(|x| Q::from_str(x).map_err(|e| format!("{which}: {x:?}: {e}"))).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?,
        ),
    })
}

fn twist(spec: &TwistSpec, rank: usize) -> Result<Twist, String> {
    Ok(match spec {
        TwistSpec::Trivial => Twist::Trivial,
        TwistSpec::HalfCanonical => Twist::HalfCanonical,
        TwistSpec::Character { degree, weight } => {
            if weight.len() != rank {
                return Err(format!("twist weight needs {rank} components"));
            }
            Twist::Character(Character { degree: *degree, weight: weight.clone() })
        }
    })
}

fn tor_table(title: &str, t: &BigradedDimsTable) -> Table {
    let mut table = Table::new(title, (0..=t.window.internal).map(|d| format!("d={d}")).collect());
    for k in 0..=t.window.homological as i64 {
        table.push(format!("H^{}", -k), t.row(-k));
    }
    table
}

fn ext_table(title: &str, t: &ExtTable) -> Table {
    let mut table = Table::new(title, (t.internal.0..=t.internal.1).map(|d| format!("d={d}")).collect());
    for p in 0..=t.max_total {
        table.push(format!("Ext^{p}"), t.row(p));
    }
    table
}

fn characters(s: &IntersectionScenario) -> Vec<(&'static str, String)> {
    vec![
        ("det N_B/C2", s.det_normal.to_string()),
        ("K_C1", s.canonical_first.to_string()),
        ("K_C2", s.canonical_second.to_string()),
    ]
}

/// The model of a body and the outcome of `build_scenario` with the body's twists applied.
/// The outer error is an input error; the inner one is a rejection by validation.
pub fn build_lagrangian(b: &LagrangianBody) -> Result<(SymplecticModel, Result<IntersectionScenario, LagrangianError>), String> {
    let n = b.variables.len();
    let degrees = b.degrees.clone().unwrap_or_else(|| vec![1; n]);
    let model = SymplecticModel::cotangent(&b.variables, &degrees, b.symplectic_degree, b.weights.as_deref())
        .map_err(|e| format!("model: {e}"))?;
    let first = descriptor(&model, &b.variables, &b.first, "first")?;
    let second = descriptor(&model, &b.variables, &b.second, "second")?;
    let rank = model.torus_rank();
    let twists = (twist(&b.twists.first, rank)?, twist(&b.twists.second, rank)?);
    let built = build_scenario(&model, &first, &second).map(|s| s.with_twists(twists.0, twists.1));
    Ok((model, built))
}

fn lagrangian(name: &str, b: &LagrangianBody, window: Window, flags: Flags) -> Result<Report, String> {
    let (model, built) = build_lagrangian(b)?;
    let mut r = Report::new(name, Kind::LagrangianIntersection);
    r.fact("ring", model.ring().names().join(" "));
    r.fact("window", format!("{},{}", window.homological, window.internal));
    record_flags(&mut r, flags);

    let s = match (built, &b.expect.rejected) {
        (Ok(s), None) => s,
        (Err(e), None) => return Err(e.to_string()),
        (Err(e), Some(tag)) => {
            r.check(format!("rejected as {tag}"), error_tag(&e) == tag, vec![e.to_string()]);
            return Ok(r);
        }
        (Ok(_), Some(tag)) => {
            r.check(format!("rejected as {tag}"), false, vec!["the scenario was accepted".into()]);
            return Ok(r);
        }
    };
    r.fact("dim B", s.dim_b);
    r.fact("codim(B, C2)", s.m);
    r.fact("excess rank", s.excess_rank);
    r.fact("moment level", format!("({})", s.moment_level.iter().map(format_rational).collect::<Vec<_>>().join(",")));
    r.fact("moment components", s.moments.iter().map(|p| model.ring().format(p)).collect::<Vec<_>>().join(", "));
    for (k, v) in characters(&s) {
        r.fact(k, v);
    }

    let oracle = compare_with_oracle(&s, window).map_err(|e| e.to_string())?;
    r.check("excess rank equals dim B", s.excess_rank == s.dim_b, vec![]);
    for c in &oracle.comparisons {
        r.check(&c.name, c.passed(), c.mismatches.clone());
    }
    match canonical_char_check(&s) {
        Ok(cert) => {
            let details = cert.summands.iter().map(|(k, c)| format!("{k} = {c}")).collect();
            r.check("canonical character identity", true, details);
        }
        Err(e) => r.check("canonical character identity", false, vec![e.to_string()]),
    }
    if s.second.form(&model).is_some() {
        match hessian_torsion_check(&s) {
            Ok(h) => {
                let detail = format!("rank {} on codim {}, minor {} (unit: {})", h.rank, h.codim, h.minor, h.unit);
                r.check("Hessian nondegenerate along B", true, vec![detail]);
                if let Some(e) = &b.expect.hessian {
                    let ok = e.rank == h.rank && e.minor == h.minor;
                    r.check("expected Hessian", ok, vec![format!("expected rank {} minor {}", e.rank, e.minor)]);
                }
            }
            Err(e) => r.check("Hessian nondegenerate along B", false, vec![e.to_string()]),
        }
    }

    expect_eq(&mut r, "dim B", &b.expect.dim_b, &s.dim_b);
    expect_eq(&mut r, "excess rank", &b.expect.excess_rank, &s.excess_rank);
    if let Some(rows) = &b.expect.tor_rows {
        let mut bad = vec![];
        for (k, row) in rows.iter().enumerate() {
            let actual = oracle.tor.row(-(k as i64));
            if k > window.homological || row.len() > actual.len() {
                bad.push(format!("row H^{} does not fit the window", -(k as i64)));
            } else if actual[..row.len()] != row[..] {
                bad.push(format!("H^{}: expected {row:?}, found {:?}", -(k as i64), &actual[..row.len()]));
            }
        }
        r.check("expected Tor rows", bad.is_empty(), bad);
    }
    if let Some(expected) = &b.expect.equivariant_total {
        let actual: Option<Vec<usize>> =
            oracle.equivariant.as_ref().map(|t| (0..expected.len() as i64).map(|p| t.total_dim(p)).collect());
        let ok = actual.as_ref() == Some(expected) && expected.len() <= window.homological + 1;
        let found = actual.map_or_else(|| "no equivariant table".to_string(), |a| format!("{a:?}"));
        r.check("expected equivariant Ext totals", ok, vec![format!("expected {expected:?}, found {found}")]);
    }

    r.table(tor_table("Tor (derived tensor product)", &oracle.tor));
    if let Some(m) = &oracle.moment {
        r.table(tor_table("Tate model with moment generators", m));
    }
    r.table(ext_table("Ext C1 -> C2 (closed form)", &oracle.ext));
    r.table(ext_table("Ext C2 -> C1 (closed form)", &oracle.ext_swapped));
    if let Some(e) = &oracle.equivariant {
        let mut t = Table::new("equivariant Ext totals", (0..=e.max_total).map(|p| format!("p={p}")).collect());
        t.push("dim", (0..=e.max_total).map(|p| e.total_dim(p)));
        r.table(t);
    }
    Ok(r)
}

fn cotangent_names(names: &[String]) -> Vec<String> {
    let mut out = names.to_vec();
    out.extend(names.iter().map(|z| format!("w_{}", z.strip_prefix("z_").unwrap_or(z))));
    out
}

fn series_columns(n: usize) -> Vec<String> {
    (0..=n).map(|k| format!("t^{k}")).collect()
}

fn kirwan_rep(r: &mut Report, prefix: &str, rep: &TorusRepresentation, truncation: usize) -> (String, Vec<i64>, Vec<usize>) {
    let locus = semistable_locus(rep);
    r.fact(&format!("{prefix}semistable locus"), &locus.description);
    let strata = hkkn_stratification(rep);
    let mut table = Table::new(format!("{prefix}HKKN strata"), vec!["r_beta".into(), "Z_beta".into(), "supports".into(), "P_G(S_beta)".into()]);
    let mut all_certified = true;
    for st in &strata {
        let fixed: Vec<&str> = st.fixed.iter().map(|&i| rep.names()[i].as_str()).collect();
        let series = derint_core::kirwan::stratum_poincare_series(rep, st);
        table.push(
            format!("beta={}", st.beta_string()),
            [st.codim.to_string(), format!("{{{}}}", fixed.join(",")), st.supports.len().to_string(), series.to_string()],
        );
        match atiyah_bott_certificate(rep, st) {
            Ok(c) => {
                let normal: Vec<String> =
                    c.normal.iter().map(|(i, p)| format!("<wt({}), beta> = {}", rep.names()[*i], format_rational(p))).collect();
                let detail = format!("normal directions: {}", if normal.is_empty() { "none".into() } else { normal.join(", ") });
                r.check(format!("{prefix}Atiyah-Bott at beta={}", st.beta_string()), true, vec![detail]);
            }
            Err(e) => {
                all_certified = false;
                r.check(format!("{prefix}Atiyah-Bott at beta={}", st.beta_string()), false, vec![e.to_string()]);
            }
        }
    }
    r.table(table);

    let morse = morse_equality_check(rep, truncation);
    let mut t = Table::new(format!("{prefix}Morse identity"), series_columns(truncation));
    t.push("P_G(M)", &morse.total);
    for (beta, codim, p) in &morse.strata {
        t.push(format!("t^{} P(S_{beta})", 2 * codim), p.shift(2 * codim).truncate(truncation));
    }
    t.push("P_G(M^ss)", &morse.residual_coefficients);
    r.table(t);
    if all_certified {
        r.check(
            format!("{prefix}Morse identity to t^{truncation}"),
            morse.identity_holds() && morse.nonnegative(),
            vec![format!("P_G(M^ss) = {}", morse.residual)],
        );
    } else {
        r.check(format!("{prefix}Morse identity to t^{truncation}"), true, vec!["not asserted: a stratum lacks a certificate".into()]);
    }
    (locus.description, morse.residual_coefficients, strata.iter().map(|s| s.codim).collect())
}

fn kirwan(name: &str, b: &KirwanBody, truncation: usize, flags: Flags) -> Result<Report, String> {
    let rep = match &b.names {
        Some(names) => TorusRepresentation::with_names(b.weights.clone(), b.chi.clone(), names.clone()),
        None => TorusRepresentation::new(b.weights.clone(), b.chi.clone()),
    }
    .map_err(|e| e.to_string())?;
    let mut r = Report::new(name, Kind::Kirwan);
    r.fact("torus rank", rep.rank());
    r.fact("weights", format!("{:?}", rep.weights()));
    r.fact("chi", format!("{:?}", rep.chi()));
    r.fact("truncation", truncation);
    record_flags(&mut r, flags);
    let (locus, residual, codims) = kirwan_rep(&mut r, "", &rep, truncation);
    expect_eq(&mut r, "semistable locus", &b.expect.semistable, &locus);
    expect_eq(&mut r, "stratum codimensions", &b.expect.codims, &codims);
    if let Some(e) = &b.expect.residual {
        let known = PoincareSeries::polynomial(e.clone());
        let ok = known.truncate(truncation) == residual;
        r.check("expected P_G(M^ss)", ok, vec![format!("expected {known}")]);
    }
    if b.cotangent {
        let mut weights = rep.weights().to_vec();
        weights.extend(rep.weights().iter().map(|w| w.iter().map(|x| -x).collect::<Vec<_>>()));
        let cot = TorusRepresentation::with_names(weights, rep.chi().to_vec(), cotangent_names(rep.names())).map_err(|e| e.to_string())?;
        let (locus, residual, _) = kirwan_rep(&mut r, "cotangent ", &cot, truncation);
        expect_eq(&mut r, "cotangent semistable locus", &b.expect.cotangent_semistable, &locus);
        if let Some(e) = &b.expect.cotangent_residual {
            let known = PoincareSeries::polynomial(e.clone());
            r.check("expected cotangent P_G(M^ss)", known.truncate(truncation) == residual, vec![format!("expected {known}")]);
        }
    }
    Ok(r)
}

fn localsys(name: &str, b: &LocalsysBody, flags: Flags) -> Result<Report, String> {
    let k = match &b.complex {
        ComplexSpec::Point => SimplicialModel::point(),
        ComplexSpec::Circle { vertices } if *vertices >= 3 => SimplicialModel::circle(*vertices),
        ComplexSpec::Torus { grid } if *grid >= 3 => SimplicialModel::torus(*grid),
        ComplexSpec::Facets { vertices, facets } => SimplicialModel::from_facets(*vertices, facets).map_err(|e| e.to_string())?,
        _ => return Err("circles and tori need at least 3 vertices per side".into()),
    };
    if b.monodromy.order == 0 {
        return Err("monodromy order must be positive".into());
    }
    let l = match (b.monodromy.preset, &b.complex) {
        (Some(Preset::TorusSeam), ComplexSpec::Torus { grid }) if b.monodromy.order == 2 && b.monodromy.edges.is_empty() => {
            torus_seam_system(*grid)
        }
        (Some(Preset::TorusSeam), _) => return Err("the torus_seam preset needs a torus, order 2 and no explicit edges".into()),
        (None, _) => {
            let edges: Vec<((usize, usize), i64)> = b.monodromy.edges.iter().map(|&(u, v, a)| ((u, v), a)).collect();
            MonodromyData::new(b.monodromy.order, &edges)
        }
    };
    let n = b.cover.unwrap_or_else(|| l.exact_order());
    let mut r = Report::new(name, Kind::Localsys);
    r.fact("vertices", k.vertex_count());
    r.fact("simplices", format!("{:?}", (0..=k.dimension()).map(|d| k.simplices(d).len()).collect::<Vec<_>>()));
    r.fact("euler characteristic", k.euler_characteristic());
    r.fact("monodromy order", l.exact_order());
    r.fact("sheets", n);
    record_flags(&mut r, flags);

    let base = twisted_cohomology(&k, &MonodromyData::trivial(1)).map_err(|e| e.to_string())?;
    let twisted = twisted_cohomology(&k, &l).map_err(|e| e.to_string())?;
    let cov = covering_decomposition_check(&k, &l, n).map_err(|e| e.to_string())?;
    let width = cov.cover.len().max(base.len());
    let pad = |v: &[usize]| {
        let mut v = v.to_vec();
        v.resize(width, 0);
        v
    };
    let mut t = Table::new("cohomology", (0..width).map(|d| format!("H^{d}")).collect());
    t.push("K, trivial", pad(&base));
    t.push("K, L", pad(&twisted));
    for (j, s) in cov.summands.iter().enumerate() {
        t.push(format!("K, L^{j}"), pad(s));
    }
    t.push("sum over j", pad(&cov.sum));
    t.push("cover", pad(&cov.cover));
    r.table(t);
    r.check("cover cohomology splits into powers of L", cov.cover == cov.sum, vec![format!("{:?} vs {:?}", cov.cover, cov.sum)]);
    r.check(
        "Euler characteristic multiplies by the number of sheets",
        cov.euler_cover == n as i64 * cov.euler_base,
        vec![format!("{} = {} * {}", cov.euler_cover, n, cov.euler_base)],
    );
    expect_eq(&mut r, "base cohomology", &b.expect.base, &pad(&base));
    expect_eq(&mut r, "twisted cohomology", &b.expect.twisted, &pad(&twisted));
    expect_eq(&mut r, "cover cohomology", &b.expect.cover, &pad(&cov.cover));
    Ok(r)
}
