use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use strat_sheaf::complex::{catalog, example, parse_space, StratifiedComplex};
use strat_sheaf::deligne::{
    build_ic, dual_mezzo, is_depth_one, lspace_check, validate_mezzo, witt_report, MezzoSpec, Mezzoperversity, Perversity, Verdict,
};
use strat_sheaf::linalg::GradedDims;
use strat_sheaf::verify::{canonical_maps, check_rp, concentration_check, duality_report, local_poincare_check};

use crate::output::Report;
use crate::Common;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("unknown example `{0}` (see `strat-sheaf examples`)")]
    UnknownExample(String),
    #[error("bad --perversity `{0}`: expected lower, upper or custom:<path>")]
    Perversity(String),
    #[error(transparent)]
    Lib(#[from] strat_sheaf::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_space(arg: &str) -> Result<StratifiedComplex> {
    match arg.strip_prefix('@') {
        Some(name) => example(name).ok_or_else(|| CliError::UnknownExample(name.to_string())),
        None => Ok(parse_space(&read(Path::new(arg))?)?),
    }
}

fn load_mezzo(space: &StratifiedComplex, c: &Common) -> Result<Mezzoperversity> {
    let spec = match &c.mezzo {
        Some(p) => MezzoSpec::from_json(&read(p)?)?,
        None => MezzoSpec::new(),
    };
    Ok(validate_mezzo(space, &spec)?)
}

fn load_perversity(c: &Common) -> Result<Perversity> {
    match c.perversity.as_deref() {
        None | Some("lower") => Ok(Perversity::Lower),
        Some("upper") => Ok(Perversity::Upper),
        Some(s) => match s.strip_prefix("custom:") {
            Some(p) => Ok(Perversity::from_json(&read(Path::new(p))?)?),
            None => Err(CliError::Perversity(s.to_string())),
        },
    }
}

fn dims(g: &GradedDims, n: usize) -> String {
    let v: Vec<String> = g.to_vec(n + 1).iter().map(usize::to_string).collect();
    format!("({})", v.join(","))
}

pub fn validate(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let body = json!({
        "name": x.name(),
        "dim": x.dim(),
        "vertices": x.vertices().len(),
        "f_vector": x.f_vector(),
        "euler_characteristic": x.euler_characteristic(),
        "singular_codims": x.singular_codims(),
    });
    Ok(Report::new("validate", Some(x.name()), body)
        .line(format!("{}: valid {}-dimensional stratified pseudomanifold", x.name(), x.dim()))
        .line(format!("f-vector {:?}, Euler characteristic {}", x.f_vector(), x.euler_characteristic()))
        .line(format!("singular codimensions {:?}", x.singular_codims())))
}

pub fn strata(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let comps = x.all_stratum_components();
    let rows: Vec<Vec<String>> = comps
        .iter()
        .map(|s| {
            vec![s.id.clone(), s.codim.to_string(), s.simplices.len().to_string(), x.format_simplex(s.base), is_depth_one(&x, s).to_string()]
        })
        .collect();
    let body: Vec<Value> = comps
        .iter()
        .map(|s| {
            json!({
                "id": s.id, "codim": s.codim, "simplices": s.simplices.len(),
                "base": x.format_simplex(s.base), "depth_one": is_depth_one(&x, s),
            })
        })
        .collect();
    Ok(Report::new("strata", Some(x.name()), json!({ "components": body }))
        .line(format!("{}: {} stratum components", x.name(), comps.len()))
        .table(&["component", "codim", "simplices", "base", "depth_one"], rows))
}

pub fn witt(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let w = witt_report(&x)?;
    let rows = w.components.iter().map(|e| vec![e.component.clone(), e.codim.to_string(), e.dim.to_string(), e.witt.to_string()]).collect();
    Ok(Report::new("witt", Some(x.name()), serde_json::to_value(&w).unwrap())
        .line(format!("{}: {}", x.name(), if w.witt { "Witt" } else { "non-Witt" }))
        .table(&["component", "codim", "dim", "witt"], rows))
}

fn stalk_rows(x: &StratifiedComplex, s: &strat_sheaf::sheaf::SheafComplex) -> (Vec<Vec<String>>, Vec<Value>) {
    let comps = x.all_stratum_components();
    let rows = comps.iter().map(|c| vec![c.id.clone(), c.codim.to_string(), dims(&s.stalk_cohomology(c.base), x.dim())]).collect();
    let body = comps
        .iter()
        .map(|c| json!({ "component": c.id, "codim": c.codim, "stalk": s.stalk_cohomology(c.base).to_vec(x.dim() + 1) }))
        .collect();
    (rows, body)
}

pub fn ic(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let p = load_perversity(c)?;
    let b = build_ic(&x, &p)?;
    let h = b.hypercohomology(&x)?;
    let (rows, stalks) = stalk_rows(&x, b.sheaf());
    Ok(Report::new("ic", Some(x.name()), json!({ "perversity": p, "hypercohomology": h.to_vec(x.dim() + 1), "stalks": stalks }))
        .line(format!("{}: hypercohomology {}", x.name(), dims(&h, x.dim())))
        .table(&["component", "codim", "stalk"], rows))
}

pub fn refined(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    let h = l.build().hypercohomology(&x)?;
    let (rows, stalks) = stalk_rows(&x, l.build().sheaf());
    Ok(Report::new("refined", Some(x.name()), json!({ "mezzo": l.to_spec().to_json(), "hypercohomology": h.to_vec(x.dim() + 1), "stalks": stalks }))
        .line(format!("{}: hypercohomology {}", x.name(), dims(&h, x.dim())))
        .table(&["component", "codim", "stalk"], rows))
}

fn entry_rows(l: &Mezzoperversity) -> Vec<Vec<String>> {
    let spec = l.to_spec().to_json();
    l.entries()
        .iter()
        .map(|e| {
            vec![
                e.component.clone(),
                e.codim.to_string(),
                e.degree.to_string(),
                e.stalk_dim.to_string(),
                e.subspace.dim().to_string(),
                spec["choices"][&e.component].to_string(),
            ]
        })
        .collect()
}

pub fn mezzo_validate(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    Ok(Report::new("mezzo-validate", Some(x.name()), json!({ "entries": l.entries(), "mezzo": l.to_spec().to_json() }))
        .line(format!("{}: valid mezzoperversity on {} components", x.name(), l.entries().len()))
        .table(&["component", "codim", "degree", "stalk_dim", "dim", "choice"], entry_rows(&l)))
}

pub fn dual(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    let d = dual_mezzo(&x, &l)?;
    Ok(Report::new("dual", Some(x.name()), d.to_spec().to_json())
        .line(format!("{}: dual mezzoperversity", x.name()))
        .table(&["component", "codim", "degree", "stalk_dim", "dim", "choice"], entry_rows(&d)))
}

pub fn lspace(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let r = lspace_check(&x, c.height_bound)?;
    let verdict = match r.verdict {
        Verdict::Yes => "an L-space",
        Verdict::No => "not an L-space",
        Verdict::RealOnly => "undecided: Lagrangians exist over the reals, no rational witness within the bound",
        Verdict::Unsupported => "undecided: a non-Witt stratum is not depth one",
    };
    let rows = r
        .components
        .iter()
        .map(|e| {
            vec![
                e.component.clone(),
                e.codim.to_string(),
                e.stalk_dim.to_string(),
                e.symmetric.map_or("-".into(), |s| if s { "symmetric".to_string() } else { "antisymmetric".to_string() }),
                e.signature.map_or("-".into(), |(p, q)| format!("({p},{q})")),
                serde_json::to_value(&e.verdict).unwrap().as_str().unwrap().to_string(),
                e.witness.as_ref().map_or("-".into(), |w| serde_json::to_string(w).unwrap()),
            ]
        })
        .collect();
    Ok(Report::new("lspace", Some(x.name()), serde_json::to_value(&r).unwrap())
        .line(format!("{}: {verdict}", x.name()))
        .table(&["component", "codim", "dim", "pairing", "signature", "verdict", "witness"], rows))
}

pub fn rp_check(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let (sheaf, label) = if c.mezzo.is_some() {
        (load_mezzo(&x, c)?.build().sheaf().clone(), "P(L)".to_string())
    } else {
        let p = load_perversity(c)?;
        (build_ic(&x, &p)?.sheaf().clone(), format!("IC {:?}", p).to_lowercase())
    };
    let r = check_rp(&x, &sheaf, c.paranoid)?;
    let rows = r
        .axioms()
        .iter()
        .map(|a| {
            let first = a.failures.first().map_or(String::new(), |f| format!("{} degree {}: {}", f.simplex, f.degree, f.detail));
            vec![a.axiom.clone(), if a.pass { "pass".into() } else { "FAIL".into() }, a.checked.to_string(), a.failure_count.to_string(), first]
        })
        .collect();
    Ok(Report::new("rp-check", Some(x.name()), serde_json::to_value(&r).unwrap())
        .pass(r.pass)
        .line(format!("{}: axioms for {label}", x.name()))
        .line(format!("RP4 forms agree: {}", r.rp4_forms_agree))
        .table(&["axiom", "result", "checked", "failures", "first failure"], rows))
}

pub fn duality(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    let r = duality_report(&x, &l)?;
    let rows = r.rows.iter().map(|e| vec![e.degree.to_string(), e.dim.to_string(), e.dual_dim.to_string(), e.equal.to_string()]).collect();
    Ok(Report::new("duality", Some(x.name()), serde_json::to_value(&r).unwrap())
        .pass(r.pass)
        .line(format!("{}: ℍ(P(L)) = {:?}, ℍ(P(DL)) = {:?}", x.name(), r.hypercohomology, r.dual_hypercohomology))
        .table(&["j", "dim H^j(P(L))", "dim H^(n-j)(P(DL))", "equal"], rows))
}

pub fn canonical(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    let r = canonical_maps(&x, &l)?;
    let rows = r
        .rows
        .iter()
        .map(|e| {
            [e.degree as usize, e.dim_lower, e.dim_refined, e.dim_upper, e.rank_alpha, e.rank_beta, e.rank_composite]
                .iter()
                .map(usize::to_string)
                .collect()
        })
        .collect();
    Ok(Report::new("canonical", Some(x.name()), serde_json::to_value(&r).unwrap())
        .pass(r.pass)
        .line(format!("{}: β∘α canonical: {}, identity on the regular part: {}", x.name(), r.composite_is_canonical, r.identity_on_regular))
        .table(&["j", "IC_m", "P(L)", "IC_n", "rank α", "rank β", "rank βα"], rows))
}

pub fn concentration(c: &Common, codim: Option<usize>) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    let ks: Vec<usize> = match codim {
        Some(k) => vec![k],
        None => {
            let mut ks: Vec<usize> = l.entries().iter().map(|e| e.codim).collect();
            ks.dedup();
            ks
        }
    };
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for k in ks {
        let r = concentration_check(&x, &l, k, c.paranoid)?;
        for p in &r.points {
            rows.push(vec![
                k.to_string(),
                p.simplex.clone(),
                dims(&p.cone_a, x.dim()),
                dims(&p.cone_b, x.dim()),
                dims(&p.cone_ba, x.dim()),
                format!("{}/{}", p.image_dim, p.target_dim),
                (p.concentrated && p.injective).to_string(),
            ]);
        }
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(Report::new("concentration", Some(x.name()), serde_json::to_value(&reports).unwrap())
        .pass(pass)
        .line(format!("{}: cones of IC_m → P(L) → IC_n along odd strata", x.name()))
        .table(&["k", "point", "C(a)", "C(b)", "C(ba)", "image", "ok"], rows))
}

pub fn poincare(c: &Common) -> Result<Report> {
    let x = load_space(&c.space)?;
    let l = load_mezzo(&x, c)?;
    let r = local_poincare_check(&x, &l)?;
    let fmt = |v: &[usize]| format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    let rows = r
        .rows
        .iter()
        .map(|e| vec![e.component.clone(), e.codim.to_string(), fmt(&e.link_betti), fmt(&e.expected), fmt(&e.stalk), e.pass.to_string()])
        .collect();
    let mut rep = Report::new("poincare", Some(x.name()), serde_json::to_value(&r).unwrap())
        .pass(r.pass)
        .line(format!("{} depth-one components checked against link cohomology", r.rows.len()))
        .table(&["component", "codim", "link", "expected", "stalk", "ok"], rows);
    if !r.skipped.is_empty() {
        rep = rep.line(format!("skipped (not depth one): {}", r.skipped.join(", ")));
    }
    Ok(rep)
}

pub fn examples(write: Option<&Path>) -> Result<Report> {
    let mut rows = Vec::new();
    let mut body = Vec::new();
    for e in catalog() {
        let x = e.build();
        if let Some(dir) = write {
            fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
            let path = dir.join(format!("{}.json", e.name));
            fs::write(&path, x.to_json() + "\n").map_err(|source| CliError::Io { path, source })?;
        }
        rows.push(vec![e.name.to_string(), x.dim().to_string(), format!("{:?}", x.f_vector()), e.description.to_string()]);
        body.push(json!({ "name": e.name, "dim": x.dim(), "f_vector": x.f_vector(), "description": e.description }));
    }
    Ok(Report::new("examples", None, json!({ "examples": body })).table(&["name", "n", "f-vector", "description"], rows))
}
