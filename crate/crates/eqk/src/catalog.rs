//! Built-in worked pairs, each with a golden report fragment.
//!
//! Running an entry computes a compact JSON summary from the full reports;
//! the golden fragment must be a sub-document of that summary.

use serde::Serialize;
use serde_json::{json, Value};

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::formality::{equivariant_cohomology, st_battery};
use crate::kunneth_tor::{assemble_ktheory, classify_pair, iota_image_comparison, ordinary_ktheory, tor0_presentation};
use crate::lie_data::{GroupPair, PairDescriptor};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub title: &'static str,
    /// Pair descriptor JSON, in the on-disk schema.
    pub descriptor: &'static str,
    /// Expected sub-document of the run summary.
    pub golden: &'static str,
    /// Window for the `ι` image comparison, when the entry runs one.
    pub iota_window: Option<u32>,
    /// Compute the `Tor⁰` fiber even when the pair is not covered.
    pub tor0: bool,
    /// Hidden from `list` and `run --all`.
    pub auxiliary: bool,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "SO3-SO2",
        title: "SO(3) ⊃ SO(2): torsion in π₁ and the maps λ, ι",
        descriptor: r#"{"name":"SO3-SO2","ambient":"SO(3)","subgroup":"SO(2)","restriction":[[1]]}"#,
        golden: r#"{"covered":false,"reason_kind":"pi1","pi1_torsion":[2],"tor0_fiber":2,
            "iota":{"contained":false,"witness":["1","t"]},
            "formality":{"isotropy_formal":true,"normalizer_order":2,"cohomology_dimension":2}}"#,
        iota_window: Some(3),
        tor0: true,
        auxiliary: false,
    },
    CatalogEntry {
        name: "SU2-T",
        title: "SU(2) ⊃ T: equal rank, G/T = S²",
        descriptor: r#"{"name":"SU2-T","ambient":"SU(2)","subgroup":"T1","restriction":[[1]]}"#,
        golden: r#"{"case":"equal_rank","covered":true,"tor0_fiber":2,"ordinary_rank":2,
            "ktheory":{"exterior_rank":0},
            "formality":{"isotropy_formal":true,"normalizer_order":2,"cohomology_dimension":2},
            "cohomology_exterior_rank":0}"#,
        iota_window: None,
        tor0: true,
        auxiliary: false,
    },
    CatalogEntry {
        name: "SU3-T",
        title: "SU(3) ⊃ T: equal rank flag manifold",
        descriptor: r#"{"name":"SU3-T","ambient":"SU(3)","subgroup":"T2","restriction":[[1,0],[0,1]]}"#,
        golden: r#"{"case":"equal_rank","covered":true,"tor0_fiber":6,"ordinary_rank":6,
            "ktheory":{"exterior_rank":0},
            "formality":{"isotropy_formal":true,"normalizer_order":6,"cohomology_dimension":6},
            "cohomology_exterior_rank":0}"#,
        iota_window: None,
        tor0: true,
        auxiliary: false,
    },
    CatalogEntry {
        name: "PSU3-T",
        title: "PSU(3) ⊃ T: RT is not free over RPSU(3)",
        descriptor: r#"{"name":"PSU3-T","ambient":"PSU(3)","subgroup":"T2","restriction":[[1,0],[0,1]]}"#,
        golden: r#"{"covered":false,"reason_kind":"pi1","pi1_torsion":[3],"rh_free_over_rg":false,
            "formality":{"isotropy_formal":true,"normalizer_order":6,"cohomology_dimension":6}}"#,
        iota_window: None,
        tor0: false,
        auxiliary: false,
    },
    CatalogEntry {
        name: "SU4-Sp2",
        title: "SU(4) ⊃ Sp(2): surjective restriction, G/H = S⁵",
        descriptor: r#"{"name":"SU4-Sp2","ambient":"SU(4)","subgroup":"Sp(2)","restriction":[[1,0,1],[0,1,0]],
            "flags":{"sigma_pair":true}}"#,
        golden: r#"{"case":"surjective","covered":true,"ordinary_rank":2,
            "ktheory":{"exterior_rank":1,"structure":"RSp(2) ⊗ Λ[z1]"},
            "formality":{"isotropy_formal":true,"normalizer_order":1,"cohomology_dimension":2},
            "cohomology_exterior_rank":1}"#,
        iota_window: None,
        tor0: false,
        auxiliary: false,
    },
    CatalogEntry {
        name: "SU4-circle",
        title: "SU(4) ⊃ diag(z, z⁻¹, z², z⁻²): RH not free over the image of RG",
        descriptor: r#"{"name":"SU4-circle","ambient":"SU(4)","subgroup":"T1","restriction":[[1,0,2]]}"#,
        golden: r#"{"covered":false,"reason_kind":"not_free",
            "formality":{"isotropy_formal":true,"normalizer_order":2,"cohomology_dimension":8}}"#,
        iota_window: None,
        tor0: false,
        auxiliary: false,
    },
    CatalogEntry {
        name: "GG",
        title: "SU(3) ⊃ SU(3): the trivial pair",
        descriptor: r#"{"name":"GG","ambient":"SU(3)","subgroup":"SU(3)","restriction":[[1,0],[0,1]]}"#,
        golden: r#"{"case":"surjective","covered":true,"ordinary_rank":1,
            "ktheory":{"exterior_rank":0},
            "formality":{"isotropy_formal":true,"normalizer_order":1,"cohomology_dimension":1},
            "cohomology_exterior_rank":0}"#,
        iota_window: None,
        tor0: false,
        auxiliary: true,
    },
];

/// Listed entries (auxiliary ones excluded).
pub fn entries() -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(|e| !e.auxiliary)
}

pub fn all_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Input(format!("no catalog entry {name:?}")))
}

impl CatalogEntry {
    pub fn descriptor(&self) -> PairDescriptor {
        serde_json::from_str(self.descriptor).expect("built-in descriptor parses")
    }

    pub fn pair(&self) -> Result<GroupPair> {
        self.descriptor().build()
    }

    pub fn golden(&self) -> Value {
        serde_json::from_str(self.golden).expect("built-in golden parses")
    }
}

/// The compact report compared against golden fragments.
pub fn summarize(entry: &CatalogEntry, window: Option<u32>, ctx: &Ctx) -> Result<Value> {
    let pair = entry.pair()?;
    let cls = classify_pair(&pair, ctx)?;
    let reason_kind = if !cls.pi1.free_abelian {
        Some("pi1")
    } else if cls.reason.as_deref().is_some_and(|r| r.starts_with("RH not free over image")) {
        Some("not_free")
    } else {
        cls.reason.as_ref().map(|_| "other")
    };
    let mut out = json!({
        "entry": entry.name,
        "pair": pair.name,
        "case": cls.case,
        "covered": cls.covered(),
        "reason_kind": reason_kind,
        "reason": cls.reason,
        "pi1_torsion": cls.pi1.torsion_primes,
        "rank_difference": pair.rank_difference(),
    });
    if let Some(j) = &cls.torsion_fiber_jump {
        out["rh_free_over_rg"] = json!(false);
        out["torsion_fiber_jump"] = json!(j);
    }
    if entry.tor0 || cls.covered() {
        let t = tor0_presentation(&pair, ctx)?;
        out["tor0_fiber"] = json!(t.double_augmentation_fiber(ctx)?.finite());
    }
    if cls.covered() {
        let k = assemble_ktheory(&pair, ctx)?;
        out["ktheory"] = json!({
            "structure": k.structure,
            "exterior_rank": k.exterior_rank,
            "ring_generators": k.ring.vars,
        });
        out["ordinary_rank"] = json!(ordinary_ktheory(&pair, ctx)?.total_rank);
    }
    if let Some(w) = window.or(entry.iota_window) {
        let c = iota_image_comparison(&pair, w, ctx)?;
        out["iota"] = json!({
            "window": w,
            "contained": c.contained,
            "witness": c.witness.as_ref().map(|p| [p.first.clone(), p.second.clone()]),
        });
    }
    let f = st_battery(&pair, ctx)?;
    out["formality"] = json!({
        "isotropy_formal": f.isotropy_formal,
        "status": f.status,
        "verdicts": f.conditions.iter().map(|c| c.verdict).collect::<Vec<_>>(),
        "normalizer_order": f.fpdim.normalizer_order,
        "cohomology_dimension": f.fpdim.cohomology_dimension,
        "ci": f.ci_flag,
    });
    if f.isotropy_formal == Some(true) {
        out["cohomology_exterior_rank"] = json!(equivariant_cohomology(&pair, ctx)?.exterior_rank);
    }
    Ok(out)
}

/// Paths at which `actual` fails to contain `expected`.
pub fn golden_mismatches(expected: &Value, actual: &Value) -> Vec<String> {
    fn walk(path: &str, e: &Value, a: &Value, out: &mut Vec<String>) {
        match (e, a) {
            (Value::Object(eo), Value::Object(ao)) => {
                for (k, ev) in eo {
                    let p = format!("{path}/{k}");
                    match ao.get(k) {
                        Some(av) => walk(&p, ev, av, out),
                        None => out.push(format!("{p}: missing, expected {ev}")),
                    }
                }
            }
            _ if e == a => {}
            _ => out.push(format!("{path}: expected {e}, got {a}")),
        }
    }
    let mut out = Vec::new();
    walk("", expected, actual, &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
    pub error: Option<String>,
    pub summary: Option<Value>,
}

pub fn run_entry(entry: &CatalogEntry, window: Option<u32>, ctx: &Ctx) -> EntryResult {
    match summarize(entry, window, ctx) {
        Ok(s) => {
            let mismatches = golden_mismatches(&entry.golden(), &s);
            EntryResult { name: entry.name.into(), passed: mismatches.is_empty(), mismatches, error: None, summary: Some(s) }
        }
        Err(e) => EntryResult {
            name: entry.name.into(),
            passed: false,
            mismatches: Vec::new(),
            error: Some(e.to_string()),
            summary: None,
        },
    }
}

/// Every listed entry, one thread each; results in catalog order.
pub fn run_all(ctx: &Ctx) -> Vec<EntryResult> {
    let list: Vec<_> = entries().collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = list.iter().map(|e| s.spawn(move || run_entry(e, None, ctx))).collect();
        handles.into_iter().map(|h| h.join().expect("catalog worker panicked")).collect()
    })
}
