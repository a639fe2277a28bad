use std::fs;

use qkneser::acceptance::run_all;
use qkneser::geometry::{
    classify_standard, cover_to_colouring, hyperplane_colouring, is_cover, middle_colouring, Cover,
    CoverVerdict, Incidences, StandardVerdict,
};
use qkneser::homs::{
    echelon_shadow_map, extension_map, field_reduction_map, no_hom_certificate, point_set_map,
    subfield_map, verify_homomorphism, HomVerdict, InducedVerdict,
};
use qkneser::kneser::{
    build_q_kneser_guarded, export_dimacs, to_dimacs, verify_colouring, ColouringVerdict, Graph,
};
use qkneser::qcombin::{bracket, fractional_chromatic, gauss_binomial, independence_bound};
use qkneser::solve::{
    cover_instance, enumerate_blocking_sets, enumerate_min_covers, max_independent_set,
    min_set_cover, minimum_blocking_sets, SolverConfig,
};
use qkneser::{Error, Result};
use serde_json::json;

use crate::{Cli, Command, HomName, Scheme};

pub const OK: u8 = 0;
pub const CHECK_FAILED: u8 = 1;
pub const INVALID: u8 = 2;
pub const GUARD: u8 = 3;

pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard(_) => GUARD,
        Error::NotCover { .. } | Error::Infeasible { .. } => CHECK_FAILED,
        _ => INVALID,
    }
}

fn config(cli: &Cli) -> Result<SolverConfig> {
    if cli.threads == 0 {
        return Err(Error::InvalidParameters(
            "--threads must be at least 1".into(),
        ));
    }
    Ok(SolverConfig {
        max_nodes: cli.max_nodes,
        threads: cli.threads,
    })
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Params { v, k, q } => params(cli, *v, *k, *q),
        Command::Graph { v, k, q, dimacs } => {
            let g = build_q_kneser_guarded(*v, *k, *q, cli.max_vertices)?;
            match dimacs {
                Some(path) => {
                    export_dimacs(&g, path)?;
                    println!(
                        "wrote qK_{{{v}:{k}}} (q={q}): {} vertices, {} edges to {}",
                        g.n(),
                        g.edge_count(),
                        path.display()
                    );
                }
                None => print!("{}", to_dimacs(&g)),
            }
            Ok(OK)
        }
        Command::Chi { v, q, out } => chi(cli, &cfg, *v, *q, out.as_deref()),
        Command::Covers {
            v,
            q,
            size,
            enumerate,
            classify,
        } => covers(cli, &cfg, *v, *q, *size, *enumerate, *classify),
        Command::Alpha { v, k, q } => alpha(cli, &cfg, *v, *k, *q),
        Command::Colour {
            v,
            k,
            q,
            scheme,
            file,
        } => colour(cli, *v, *k, *q, *scheme, file.as_deref()),
        Command::VerifyHom {
            name,
            params,
            induced,
        } => verify_hom(cli, &cfg, *name, params, *induced),
        Command::NoHom { q } => no_hom(cli, *q),
        Command::Blocking { v, q, size } => blocking(cli, &cfg, *v, *q, *size),
        Command::Accept => accept(cli, &cfg),
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn check_field(q: u32) -> Result<()> {
    qkneser::gf::Field::from_order(q as u64).map(|_| ())
}

fn params(cli: &Cli, v: usize, k: usize, q: u32) -> Result<u8> {
    check_field(q)?;
    if k == 0 || k > v {
        return Err(invalid(format!("need 1 ≤ k ≤ v (v={v}, k={k})")));
    }
    let (vu, ku, qu) = (v as u32, k as u32, q as u64);
    let vertices = gauss_binomial(vu, ku, qu);
    let valency = num_bigint::BigUint::from(qu).pow(ku * ku) * gauss_binomial(vu - ku, ku, qu);
    let alpha = independence_bound(vu, ku, qu).ok();
    let fractional = fractional_chromatic(vu, ku, qu)?;
    let hyperplane = (v >= 2 * k).then(|| bracket(vu - ku + 1, qu));
    let middle = (v == 2 * k)
        .then(|| num_bigint::BigUint::from(qu).pow(ku) + num_bigint::BigUint::from(qu).pow(ku - 1));
    let s = |x: &Option<num_bigint::BigUint>| x.as_ref().map(|n| n.to_string());
    if cli.json {
        let doc = json!({
            "v": v, "k": k, "q": q,
            "vertices": vertices.to_string(),
            "valency": valency.to_string(),
            "independence_bound": s(&alpha),
            "fractional_chromatic": { "num": fractional.numer().to_string(), "den": fractional.denom().to_string() },
            "chromatic_upper_bounds": { "hyperplane": s(&hyperplane), "middle": s(&middle) },
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        let dash = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        println!("qK_{{{v}:{k}}}, q = {q}");
        println!("  vertices              {vertices}");
        println!("  valency               {valency}");
        println!("  independence bound    {}", dash(s(&alpha)));
        println!("  fractional chromatic  {fractional}");
        println!("  hyperplane colouring  {}", dash(s(&hyperplane)));
        println!("  middle colouring      {}", dash(s(&middle)));
    }
    Ok(OK)
}

fn incidences(cli: &Cli, v: usize, q: u32) -> Result<Incidences> {
    if v < 3 {
        return Err(invalid(format!(
            "PG(v-1,q) with lines and planes needs v ≥ 3 (v={v})"
        )));
    }
    Incidences::guarded(v, q, cli.max_vertices)
}

fn chi(
    cli: &Cli,
    cfg: &SolverConfig,
    v: usize,
    q: u32,
    out: Option<&std::path::Path>,
) -> Result<u8> {
    check_field(q)?;
    if v < 4 {
        return Err(invalid(format!("chi needs v ≥ 4 (v={v})")));
    }
    let inc = incidences(cli, v, q)?;
    let cert = min_set_cover(&cover_instance(&inc), cfg)?;
    let text = cert.to_json();
    if let Some(path) = out {
        fs::write(path, &text)?;
    }
    if !cli.json {
        if cert.exhaustive {
            println!("χ(qK_{{{v}:2}}) = {} for q = {q}", cert.optimum);
        } else {
            println!(
                "χ(qK_{{{v}:2}}) ≤ {} for q = {q} (node guard tripped after {} nodes)",
                cert.optimum, cert.nodes
            );
        }
    }
    println!("{text}");
    Ok(if cert.exhaustive { OK } else { GUARD })
}

fn covers(
    cli: &Cli,
    cfg: &SolverConfig,
    v: usize,
    q: u32,
    size: Option<usize>,
    enumerate: bool,
    classify: bool,
) -> Result<u8> {
    check_field(q)?;
    let inc = incidences(cli, v, q)?;
    if classify && v != 4 {
        return Err(invalid(
            "standard-cover classification is defined for PG(3,q) only (v = 4)",
        ));
    }
    let inst = cover_instance(&inc);
    let size = match size {
        Some(n) => n,
        None => {
            let cert = min_set_cover(&inst, cfg)?;
            if !cert.exhaustive {
                return Err(Error::ResourceGuard(format!(
                    "minimum cover search exceeded {} nodes",
                    cfg.max_nodes
                )));
            }
            cert.optimum
        }
    };
    let found = enumerate_min_covers(&inst, size, cfg)?;
    let mut non_standard = 0;
    let mut rows = Vec::new();
    for chosen in &found {
        let cover = inst.to_cover(chosen).expect("geometric instance");
        let class = if classify {
            match classify_standard(&inc, &cover)? {
                StandardVerdict::Standard(p) => Some(
                    json!({"standard": true, "plane": p.plane, "point": p.point, "lines": p.lines}),
                ),
                StandardVerdict::NotStandard { step, reason } => {
                    non_standard += 1;
                    Some(json!({"standard": false, "step": format!("{step:?}"), "reason": reason}))
                }
            }
        } else {
            None
        };
        rows.push((cover, class));
    }
    if cli.json {
        let list: Vec<_> = rows
            .iter()
            .map(|(c, class)| {
                let mut doc = serde_json::to_value(c).expect("json");
                if let Some(class) = class {
                    doc["classification"] = class.clone();
                }
                doc
            })
            .collect();
        let doc = json!({"v": v, "q": q, "size": size, "count": found.len().to_string(), "covers": if enumerate { Some(list) } else { None }});
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    } else {
        println!(
            "{} covers of PG({},{q}) with {size} elements",
            found.len(),
            v - 1
        );
        if enumerate {
            for (c, class) in &rows {
                match class {
                    Some(class) => {
                        println!("{}  (r={}, s={}) {}", c.to_json(), c.r(), c.s(), class)
                    }
                    None => println!("{}  (r={}, s={})", c.to_json(), c.r(), c.s()),
                }
            }
        }
        if classify {
            println!(
                "{} standard, {non_standard} not standard",
                found.len() - non_standard
            );
        }
    }
    Ok(if non_standard == 0 { OK } else { CHECK_FAILED })
}

fn alpha(cli: &Cli, cfg: &SolverConfig, v: usize, k: usize, q: u32) -> Result<u8> {
    let g = build_q_kneser_guarded(v, k, q, cli.max_vertices)?;
    let cert = max_independent_set(&g, cfg)?;
    let bound = independence_bound(v as u32, k as u32, q as u64).ok();
    let matches = bound
        .as_ref()
        .map(|b| num_bigint::BigUint::from(cert.optimum) == *b);
    if !cli.json {
        print!("α(qK_{{{v}:{k}}}) = {} for q = {q}", cert.optimum);
        match &bound {
            Some(b) => println!(" (bound {b})"),
            None => println!(),
        }
    }
    println!("{}", cert.to_json());
    if !cert.exhaustive {
        return Ok(GUARD);
    }
    Ok(if matches == Some(false) {
        CHECK_FAILED
    } else {
        OK
    })
}

fn print_colouring_verdict(cli: &Cli, g: &Graph, verdict: ColouringVerdict, palette: usize) -> u8 {
    let (proper, witness) = match verdict {
        ColouringVerdict::Proper => (true, None),
        ColouringVerdict::Improper { u, v } => (false, Some([u, v])),
    };
    if cli.json {
        println!(
            "{}",
            json!({"vertices": g.n(), "colours": palette, "proper": proper, "witness": witness})
        );
    } else if proper {
        println!(
            "proper colouring of {} vertices with {palette} colours",
            g.n()
        );
    } else {
        let [u, v] = witness.expect("improper has a witness");
        println!("improper: adjacent vertices {u} and {v} share a colour");
    }
    if proper {
        OK
    } else {
        CHECK_FAILED
    }
}

fn colour(
    cli: &Cli,
    v: usize,
    k: usize,
    q: u32,
    scheme: Scheme,
    file: Option<&std::path::Path>,
) -> Result<u8> {
    check_field(q)?;
    let g = build_q_kneser_guarded(v, k, q, cli.max_vertices)?;
    let colouring = match scheme {
        Scheme::Hyperplane => hyperplane_colouring(v, k, q)?,
        Scheme::Middle => {
            if v != 2 * k {
                return Err(invalid(format!(
                    "middle colouring needs v = 2k (v={v}, k={k})"
                )));
            }
            middle_colouring(k, q)?
        }
        Scheme::Cover => {
            if k != 2 {
                return Err(invalid("cover colourings are defined for k = 2"));
            }
            let path = file.ok_or_else(|| invalid("the cover scheme needs a cover JSON file"))?;
            let cover = Cover::from_json(&fs::read_to_string(path)?)?;
            if (cover.v, cover.q) != (v, q) {
                return Err(invalid(format!(
                    "cover is for PG({},{}), not PG({},{q})",
                    cover.v - 1,
                    cover.q,
                    v - 1
                )));
            }
            let inc = incidences(cli, v, q)?;
            if let CoverVerdict::NotCover { line } = is_cover(&inc, &cover)? {
                println!("not a cover: line {line} meets no cover element");
                return Ok(CHECK_FAILED);
            }
            cover_to_colouring(&inc, &cover, &g)?
        }
    };
    let verdict = verify_colouring(&g, &colouring)?;
    Ok(print_colouring_verdict(
        cli,
        &g,
        verdict,
        colouring.palette_size(),
    ))
}

fn verify_hom(
    cli: &Cli,
    cfg: &SolverConfig,
    name: HomName,
    params: &[u64],
    induced: bool,
) -> Result<u8> {
    let need = match name {
        HomName::Subfield | HomName::FieldReduction => 4,
        _ => 3,
    };
    if params.len() != need {
        return Err(invalid(format!(
            "{name:?} takes {need} parameters, got {}",
            params.len()
        )));
    }
    let (v, k) = (params[0] as usize, params[1] as usize);
    let q = u32::try_from(params[2]).map_err(|_| invalid("q out of range"))?;
    check_field(q)?;
    let r = params.get(3).map(|&r| r as u32);
    let (map, source_q) = match name {
        HomName::Extension => (extension_map(v, k, q)?, q),
        HomName::Subfield => (subfield_map(v, k, q, r.unwrap())?, q),
        HomName::FieldReduction => {
            let r = r.unwrap();
            let big = q
                .checked_pow(r)
                .ok_or_else(|| invalid("q^r out of range"))?;
            (field_reduction_map(v, k, q, r)?, big)
        }
        HomName::EchelonShadow => (echelon_shadow_map(v, k, q)?, q),
        HomName::PointSet => (point_set_map(v, k, q, cli.max_vertices)?, q),
    };
    let g = build_q_kneser_guarded(v, k, source_q, cli.max_vertices)?;
    let report = verify_homomorphism(&g, &map, &map.image_adjacency(), induced, cfg.threads)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        match report.verdict {
            HomVerdict::Hom => println!(
                "HOM: {} edges preserved, injective {}",
                report.edges_checked, report.injective
            ),
            HomVerdict::NotHom { u, v } => println!("NOT_HOM: edge {u}-{v} maps to a non-edge"),
        }
        match report.induced {
            Some(InducedVerdict::Induced) => println!("INDUCED: non-edges map to non-edges"),
            Some(InducedVerdict::NotInduced { u, v }) => {
                println!("NOT_INDUCED: non-edge {u}-{v} maps to an edge")
            }
            None => {}
        }
    }
    let ok = report.is_hom() && (!induced || report.is_induced());
    Ok(if ok { OK } else { CHECK_FAILED })
}

fn no_hom(cli: &Cli, q: u64) -> Result<u8> {
    let cert = no_hom_certificate(q)?;
    if !cli.json {
        let f = &cert.fractional_lower_bound;
        println!(
            "q = {q}: [5]/[2] = {}/{} > q^3+q = {} >= χ(qK_{{3:1}}) = {}",
            f.num, f.den, cert.q_cubed_plus_q, cert.target_chromatic
        );
        println!(
            "{}",
            if cert.no_hom {
                "no homomorphism qK_{5:2} -> qK_{3:1}"
            } else {
                "inequality fails"
            }
        );
    }
    println!("{}", cert.to_json());
    Ok(if cert.no_hom { OK } else { CHECK_FAILED })
}

fn blocking(cli: &Cli, cfg: &SolverConfig, v: usize, q: u32, size: Option<usize>) -> Result<u8> {
    check_field(q)?;
    let inc = incidences(cli, v, q)?;
    let (size, sets) = match size {
        Some(n) => {
            if n > inc.point_count() {
                return Err(invalid(format!(
                    "PG({},{q}) has only {} points",
                    v - 1,
                    inc.point_count()
                )));
            }
            (n, enumerate_blocking_sets(&inc, n, cfg.max_nodes)?)
        }
        None => minimum_blocking_sets(&inc, cfg.max_nodes)?,
    };
    if cli.json {
        println!(
            "{}",
            json!({"v": v, "q": q, "size": size, "count": sets.len().to_string(), "sets": sets})
        );
    } else {
        println!(
            "{} blocking sets of {size} points in PG({},{q})",
            sets.len(),
            v - 1
        );
        for s in &sets {
            println!("{s:?}");
        }
    }
    Ok(OK)
}

fn accept(cli: &Cli, cfg: &SolverConfig) -> Result<u8> {
    let reports = run_all(cfg);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("json"));
    } else {
        for r in &reports {
            println!("{r}");
        }
        let passed = reports.iter().filter(|r| r.passed).count();
        println!("{passed}/{} criteria passed", reports.len());
    }
    Ok(if reports.iter().all(|r| r.passed) {
        OK
    } else if reports.iter().any(|r| r.guard_tripped) {
        GUARD
    } else {
        CHECK_FAILED
    })
}
