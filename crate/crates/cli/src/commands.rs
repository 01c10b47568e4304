use std::fmt::Write as _;

use anyhow::{anyhow, Context};
use num_rational::BigRational;
use serde_json::{json, Value};

use torsorlab::brauer::{
    condition_table, integral_search, invariant_table, pic_of_complement, validate_parameters, BrauerError, LocalInvariantReport,
};
use torsorlab::cohomology::{
    bar_cohomology_with, binorm_brauer_quotient, cyclic_cohomology_oracle, group_from_spec, induced_module, CohomologyError,
    GModule,
};
use torsorlab::fan::{
    class_group, cox_construction, divisor_map, fan_torsion_descent, galois_intertwines, is_smooth_fan,
    orbit_permutation_structure, parse_fan, spans_ambient, split_divisor_lattice, FanError,
};
use torsorlab::limits::Limits;
use torsorlab::local::{LocalError, LocalPoint, MAX_PRECISION};
use torsorlab::multinorm::{
    divisor_matrix_multinorm, expected_pic_rank, geometric_shape, pic_multinorm, torsion_free_criterion, torsor_character_map,
    units_check, MultiNormSpec,
};

use crate::report::{group, int, matrix_rows, Output};

/// Exit code 2 for bad input, 3 for exceeded resource limits.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub error: anyhow::Error,
}

pub const INPUT_ERROR: u8 = 2;
pub const RESOURCE_ERROR: u8 = 3;

impl CliError {
    pub fn input(error: impl Into<anyhow::Error>) -> Self {
        CliError { code: INPUT_ERROR, error: error.into() }
    }

    pub fn resource(error: impl Into<anyhow::Error>) -> Self {
        CliError { code: RESOURCE_ERROR, error: error.into() }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::SizeLimitExceeded { .. } | CohomologyError::OrderLimitExceeded { .. } => CliError::resource(e),
            _ => CliError::input(e),
        }
    }
}

impl From<BrauerError> for CliError {
    fn from(e: BrauerError) -> Self {
        match e {
            BrauerError::Local(LocalError::PrecisionLimit { .. }) => CliError::resource(e),
            _ => CliError::input(e),
        }
    }
}

impl From<FanError> for CliError {
    fn from(e: FanError) -> Self {
        CliError::input(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FanReport {
    ClassGroup,
    Cox,
    Galois,
    All,
}

pub fn fan(text: &str, path: &str, which: FanReport) -> Result<Output, CliError> {
    let fan = parse_fan(text).with_context(|| path.to_string()).map_err(CliError::input)?;
    let mut result = serde_json::Map::new();
    let mut out = String::new();
    let spans = spans_ambient(&fan);
    let smooth = is_smooth_fan(&fan);
    result.insert("rank".into(), json!(fan.rank()));
    result.insert("rays".into(), json!(fan.rays()));
    result.insert("spans".into(), json!(spans));
    result.insert("smooth".into(), json!(smooth));
    writeln!(out, "rank {} with {} rays, {} cones", fan.rank(), fan.rays().len(), fan.cones().len()).unwrap();
    writeln!(out, "spans ambient: {spans}\nsmooth: {smooth}").unwrap();

    if matches!(which, FanReport::ClassGroup | FanReport::All) {
        let cl = class_group(&fan)?;
        let descent = fan_torsion_descent(&fan)?;
        let split = split_divisor_lattice(&divisor_map(&fan))?;
        result.insert("divisor_map".into(), matrix_rows(&divisor_map(&fan)));
        result.insert("class_group".into(), group(&cl));
        result.insert(
            "torsion_descent".into(),
            json!({
                "torsion": group(&descent.torsion),
                "preimage": matrix_rows(&descent.preimage),
                "check": descent.check,
            }),
        );
        result.insert(
            "splitting".into(),
            json!({
                "m1_rank": split.m1_basis.cols(),
                "m2_rank": split.m2_basis.cols(),
                "cokernel_d": group(&split.cokernel_d),
                "finite_cokernel": split.finite_cokernel,
            }),
        );
        writeln!(out, "class group: {cl}").unwrap();
        writeln!(out, "torsion: {} (descent check {})", descent.torsion, descent.check).unwrap();
        writeln!(out, "coker d: {} (finite: {})", split.cokernel_d, split.finite_cokernel).unwrap();
    }
    if matches!(which, FanReport::Cox | FanReport::All) {
        let cox = cox_construction(&fan)?;
        let multipliers: Vec<Value> = cox.ray_multipliers.iter().map(|m| m.as_ref().map_or(Value::Null, int)).collect();
        result.insert(
            "cox".into(),
            json!({
                "tilde_rank": cox.tilde_rank,
                "g_tilde": matrix_rows(&cox.g_tilde),
                "subfan_c_prime": cox.subfan_c_prime,
                "ray_multipliers": multipliers,
                "ray_image_certificate": cox.ray_image_certificate,
                "all_certified": cox.all_certified(),
            }),
        );
        writeln!(out, "cox: Z^{} -> N, certificate {:?}, all certified: {}", cox.tilde_rank, cox.ray_image_certificate, cox.all_certified())
            .unwrap();
    }
    let galois_wanted = which == FanReport::Galois || (which == FanReport::All && fan.galois().is_some());
    if galois_wanted {
        let orbits = orbit_permutation_structure(&fan)?;
        let intertwines = galois_intertwines(&fan)?;
        let perms: Vec<&Vec<usize>> = fan.galois().into_iter().flat_map(|g| &g.generators).map(|g| &g.ray_permutation).collect();
        result.insert(
            "galois".into(),
            json!({ "ray_permutations": perms, "orbit_sizes": orbits, "intertwines_divisor_map": intertwines }),
        );
        writeln!(out, "orbit sizes: {orbits:?}\nray permutations: {perms:?}\nintertwines div: {intertwines}").unwrap();
    }
    Ok(Output { result: Value::Object(result), text: out })
}

pub fn cohom(group_spec: &str, module: &str, degree: usize, cyclic: bool, limits: &Limits) -> Result<Output, CliError> {
    let g = group_from_spec(group_spec, limits)?;
    let m = match module {
        "trivial" => GModule::trivial(g.clone(), 1),
        "regular" => GModule::regular(g.clone()),
        other => {
            let Some(ids) = other.strip_prefix("induced:") else {
                return Err(CliError::input(anyhow!("unknown module '{other}' (expected trivial, regular or induced:<ids>)")));
            };
            let ids = ids
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::input(anyhow!("bad subgroup id list '{ids}': {e}")))?;
            if ids.iter().any(|&i| i >= g.order()) {
                return Err(CliError::input(anyhow!("subgroup ids must be below the group order {}", g.order())));
            }
            induced_module(&g, &ids)?
        }
    };
    let r = if cyclic { cyclic_cohomology_oracle(g.order(), &m, degree)? } else { bar_cohomology_with(&m, degree, limits)? };
    let result = json!({
        "group_order": g.order(),
        "module_rank": m.rank(),
        "degree": degree,
        "cohomology": group(&r.group),
        "method": r.method.to_string(),
    });
    let text = format!("|G| = {}, rank M = {}\nH^{degree} = {}\nmethod: {}\n", g.order(), m.rank(), r.group, r.method);
    Ok(Output { result, text })
}

pub fn binorm(g1: &str, g2: &str, limits: &Limits) -> Result<Output, CliError> {
    let (a, b) = (group_from_spec(g1, limits)?, group_from_spec(g2, limits)?);
    if a.order() * b.order() > limits.group_order {
        return Err(CohomologyError::OrderLimitExceeded { limit: limits.group_order }.into());
    }
    let r = binorm_brauer_quotient(&a, &b, limits)?;
    let result = json!({
        "g1_abelianization": group(&r.g1_ab),
        "g2_abelianization": group(&r.g2_ab),
        "h2": group(&r.h2),
        "vanishing_predicted": r.vanishing_predicted,
        "kunneth": group(&r.kunneth),
        "agrees_with_kunneth": r.agrees_with_kunneth,
        "prediction_holds": r.prediction_holds,
    });
    let text = format!(
        "G1^ab = {}, G2^ab = {}\nH^2(G1 x G2, T^) = {}\nvanishing predicted: {}\nKunneth: {} (agree: {})\nprediction holds: {}\n",
        r.g1_ab, r.g2_ab, r.h2, r.vanishing_predicted, r.kunneth, r.agrees_with_kunneth, r.prediction_holds
    );
    Ok(Output { result, text })
}

fn point_json(point: &LocalPoint) -> Value {
    match point {
        LocalPoint::Real(c) => json!({ "kind": "real", "coords": c.iter().map(BigRational::to_string).collect::<Vec<_>>() }),
        LocalPoint::Padic(pt) => json!({
            "kind": "padic",
            "modulus": int(&pt.modulus()),
            "coords": pt.coords.iter().map(int).collect::<Vec<_>>(),
            "unit_flags": pt.unit_flags,
        }),
    }
}

fn invariants_json(report: &LocalInvariantReport) -> Value {
    let rows: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "place": e.place.to_string(),
                "value": e.value,
                "case": e.case.to_string(),
                "confirmed": e.confirmed,
                "point": point_json(&e.point),
            })
        })
        .collect();
    Value::Array(rows)
}

pub fn example(p: u64, q: u64, search_bound: i64, prime_bound: u64, precision: u32) -> Result<Output, CliError> {
    if precision == 0 || precision > MAX_PRECISION {
        return Err(BrauerError::from(LocalError::PrecisionLimit { requested: precision, max: MAX_PRECISION }).into());
    }
    let conditions = condition_table(p, q);
    let mut inst = validate_parameters(p, q)?;
    inst.search_bound = search_bound;
    inst.prime_bound = prime_bound;
    inst.precision = precision;
    let table = invariant_table(&inst)?;
    let search = integral_search(&inst);
    let pic = pic_of_complement(2)?;

    let mut out = String::new();
    writeln!(out, "f = p(qx + y)y + qz^2 with p = {p}, q = {q}").unwrap();
    for c in &conditions {
        writeln!(out, "  condition {}: {}", c.name, c.holds.map_or("n/a", |h| if h { "ok" } else { "fails" })).unwrap();
    }
    writeln!(out, "local invariants (precision {precision}):").unwrap();
    for e in &table.entries {
        writeln!(out, "  {:>4}  {:+}  {}{}", e.place.to_string(), e.value, e.case, if e.confirmed { "" } else { "  [unconfirmed]" }).unwrap();
    }
    writeln!(out, "obstruction product: {}", table.product).unwrap();
    writeln!(out, "integral search |x|,|y|,|z| <= {}: {} solutions of f = ±1", search.bound, search.solutions.len()).unwrap();
    let cert = &search.minus_one_certificate;
    writeln!(out, "f = -1 excluded mod {}: {}", cert.prime, cert.enumeration_confirms).unwrap();
    writeln!(out, "Pic(V) = {pic}").unwrap();

    let result = json!({
        "p": p,
        "q": q,
        "conditions": conditions.iter().map(|c| json!({ "name": c.name, "holds": c.holds })).collect::<Vec<_>>(),
        "precision": precision,
        "invariants": invariants_json(&table),
        "product": table.product,
        "search": {
            "bound": search.bound,
            "solutions": search.solutions,
            "minus_one_certificate": {
                "prime": cert.prime,
                "legendre_minus_q": cert.legendre_minus_q,
                "enumeration_confirms": cert.enumeration_confirms,
            },
        },
        "pic": group(&pic),
    });
    Ok(Output { result, text: out })
}

pub fn multinorm(k: Vec<u32>, l: Vec<u32>, s: Vec<u32>, c: &str) -> Result<Output, CliError> {
    let c: BigRational = c.parse().map_err(|e| CliError::input(anyhow!("bad constant c '{c}': {e:?}")))?;
    let spec = MultiNormSpec::new(k, l, s, c).map_err(CliError::input)?;
    let shape = geometric_shape(&spec);
    let units = units_check(&shape);
    let pic = pic_multinorm(&shape);
    let crit = torsion_free_criterion(&spec);
    let torsor = torsor_character_map(&spec);
    let result = json!({
        "m_prime": shape.m_prime,
        "r_list": shape.r_list,
        "divisor_matrix": matrix_rows(&divisor_matrix_multinorm(&shape)),
        "units_constant": units,
        "pic": group(&pic),
        "expected_rank": expected_pic_rank(&shape),
        "gcd_is_one": crit.gcd_is_one,
        "pic_torsion_free": crit.pic_torsion_free,
        "torsor_map_agrees": torsor.agrees_with_divisor_matrix,
    });
    let text = format!(
        "shape: m' = {}, r = {:?}\nunits constant: {units}\nPic = {pic} (expected rank {})\ngcd(s) = 1: {}, Pic torsion free: {}\ntorsor map agrees: {}\n",
        shape.m_prime,
        shape.r_list,
        expected_pic_rank(&shape),
        crit.gcd_is_one,
        crit.pic_torsion_free,
        torsor.agrees_with_divisor_matrix
    );
    Ok(Output { result, text })
}
