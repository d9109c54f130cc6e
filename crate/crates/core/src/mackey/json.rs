use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::{
    matrix_from_json, matrix_to_json, AbError, AbHom, FgAbGroup, MatrixJson, PresentationJson,
};
use crate::group::{GroupJson, GroupSpec, PermGroup, SubgroupLattice};

use super::{burnside_mackey, constant_mackey, fixed_point_mackey, preset_mackey};
use super::{MackeyError, MackeyFunctor};

/// An explicit functor. Keys are subgroup ids of the lattice of `group`
/// (`"H"`, `"H,K"`) and element indices (`"g,H"`). Restrictions and
/// transfers that are omitted are composed along chains; conjugations that
/// are omitted are composed from the ones given, or default to the identity
/// on levels they normalize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyJson {
    pub group: GroupSpec,
    pub levels: BTreeMap<String, PresentationJson>,
    #[serde(default)]
    pub res: BTreeMap<String, MatrixJson>,
    #[serde(default)]
    pub tr: BTreeMap<String, MatrixJson>,
    #[serde(default)]
    pub conj: BTreeMap<String, MatrixJson>,
}

/// `{ "preset": "burnside" | "constant" | "fixed", "value": .., "action": .. }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyPresetJson {
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<PresentationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
}

/// Any way of naming a Mackey functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MackeySpec {
    /// A preset name such as `burnside` or `constant-Z/2`.
    Name(String),
    Preset(MackeyPresetJson),
    Explicit(MackeyJson),
}

fn parse_err(e: impl std::fmt::Display) -> MackeyError {
    MackeyError::Parse(e.to_string())
}

fn shape_to_parse(e: AbError) -> MackeyError {
    match e {
        AbError::Shape(s) => MackeyError::Parse(s),
        other => MackeyError::Ab(other),
    }
}

impl MackeySpec {
    /// Reads a bare preset name or a JSON document.
    pub fn parse(text: &str) -> Result<Self, MackeyError> {
        let trimmed = text.trim();
        if !trimmed.starts_with('{') && !trimmed.starts_with('"') {
            return Ok(MackeySpec::Name(trimmed.to_string()));
        }
        let value: Value = serde_json::from_str(trimmed).map_err(parse_err)?;
        match &value {
            Value::String(s) => Ok(MackeySpec::Name(s.clone())),
            Value::Object(map) if map.contains_key("preset") => Ok(MackeySpec::Preset(
                serde_json::from_value(value).map_err(parse_err)?,
            )),
            Value::Object(_) => Ok(MackeySpec::Explicit(
                serde_json::from_value(value).map_err(parse_err)?,
            )),
            _ => Err(MackeyError::Parse(
                "expected a preset name or an object".into(),
            )),
        }
    }

    /// The group named inside the spec, if any.
    pub fn group(&self) -> Option<&GroupSpec> {
        match self {
            MackeySpec::Name(_) => None,
            MackeySpec::Preset(p) => p.group.as_ref(),
            MackeySpec::Explicit(j) => Some(&j.group),
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, MackeySpec::Explicit(_))
    }

    /// Builds the functor over `lattice`, or over the group named in the
    /// spec when `lattice` is `None`. A spec that names a different group
    /// than `lattice` is rejected.
    pub fn build(
        &self,
        lattice: Option<&Arc<SubgroupLattice>>,
        cap: usize,
    ) -> Result<MackeyFunctor, MackeyError> {
        let lattice = match (self.group(), lattice) {
            (Some(spec), given) => {
                let g = spec.build_with_cap(cap)?;
                match given {
                    Some(l) if *l.group() != g => {
                        return Err(MackeyError::Shape(
                            "the functor is defined over a different group".into(),
                        ))
                    }
                    Some(l) => l.clone(),
                    None => Arc::new(SubgroupLattice::new(g)),
                }
            }
            (None, Some(l)) => l.clone(),
            (None, None) => return Err(MackeyError::Parse("no group given".into())),
        };
        match self {
            MackeySpec::Name(name) => preset_mackey(&lattice, name),
            MackeySpec::Preset(p) => build_preset(&lattice, p),
            MackeySpec::Explicit(j) => mackey_from_json_on(&lattice, j),
        }
    }
}

fn build_preset(
    lattice: &Arc<SubgroupLattice>,
    p: &MackeyPresetJson,
) -> Result<MackeyFunctor, MackeyError> {
    match p.preset.as_str() {
        "burnside" => Ok(burnside_mackey(lattice)),
        "constant" => {
            let a = match &p.value {
                Some(v) => v.build().map_err(shape_to_parse)?,
                None => FgAbGroup::free(1),
            };
            Ok(constant_mackey(lattice, &a))
        }
        "fixed" => {
            let action = p
                .action
                .as_ref()
                .ok_or_else(|| MackeyError::Parse("`fixed` needs an `action`".into()))?;
            let m = action.first().map_or(0, Vec::len);
            let matrices = action
                .iter()
                .map(|a| matrix_from_json(a, m, m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(shape_to_parse)?;
            fixed_point_mackey(lattice, &matrices)
        }
        other => preset_mackey(lattice, other),
    }
}

fn parse_index(s: &str, bound: usize, what: &str) -> Result<usize, MackeyError> {
    s.trim()
        .parse::<usize>()
        .ok()
        .filter(|&i| i < bound)
        .ok_or_else(|| MackeyError::Parse(format!("`{s}` is not a valid {what}")))
}

fn parse_pair(key: &str, first: usize, second: usize) -> Result<(usize, usize), MackeyError> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| MackeyError::Parse(format!("key `{key}` is not of the form \"a,b\"")))?;
    Ok((
        parse_index(a, first, "index")?,
        parse_index(b, second, "subgroup id")?,
    ))
}

/// Builds an explicit functor over the group it names.
pub fn mackey_from_json(j: &MackeyJson, cap: usize) -> Result<MackeyFunctor, MackeyError> {
    let group = j.group.build_with_cap(cap)?;
    mackey_from_json_on(&Arc::new(SubgroupLattice::new(group)), j)
}

fn mackey_from_json_on(
    lattice: &Arc<SubgroupLattice>,
    j: &MackeyJson,
) -> Result<MackeyFunctor, MackeyError> {
    let n = lattice.len();
    let order = lattice.group().order();

    let mut levels = vec![None; n];
    for (key, p) in &j.levels {
        let h = parse_index(key, n, "subgroup id")?;
        levels[h] = Some(p.build().map_err(shape_to_parse)?);
    }
    let levels: Vec<FgAbGroup> = levels
        .into_iter()
        .enumerate()
        .map(|(h, l)| l.ok_or_else(|| MackeyError::Parse(format!("level {h} is missing"))))
        .collect::<Result<_, _>>()?;

    let hom = |s: usize, t: usize, m: &MatrixJson| -> Result<AbHom, MackeyError> {
        let matrix =
            matrix_from_json(m, levels[s].ngens(), levels[t].ngens()).map_err(shape_to_parse)?;
        Ok(AbHom::new_unchecked(
            levels[s].clone(),
            levels[t].clone(),
            matrix,
        )?)
    };

    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (key, m) in &j.res {
        let (h, k) = parse_pair(key, n, n)?;
        if !lattice.is_subgroup(k, h) {
            return Err(MackeyError::Parse(format!(
                "res {key}: {k} is not a subgroup of {h}"
            )));
        }
        res.insert((h, k), hom(h, k, m)?);
    }
    for (key, m) in &j.tr {
        let (h, k) = parse_pair(key, n, n)?;
        if !lattice.is_subgroup(k, h) {
            return Err(MackeyError::Parse(format!(
                "tr {key}: {k} is not a subgroup of {h}"
            )));
        }
        tr.insert((h, k), hom(k, h, m)?);
    }
    fill_chains(lattice, &levels, &mut res, true)?;
    fill_chains(lattice, &levels, &mut tr, false)?;

    let mut conj: Vec<Option<AbHom>> = vec![None; order * n];
    for (key, m) in &j.conj {
        let (g, h) = parse_pair(key, order, n)?;
        conj[g * n + h] = Some(hom(h, lattice.conjugate(g, h), m)?);
    }
    fill_conjugations(lattice, &levels, &mut conj)?;
    let conj = conj.into_iter().map(Option::unwrap).collect();

    MackeyFunctor::from_parts(lattice.clone(), levels, res, tr, conj)
}

/// Completes a restriction (`downward`) or transfer table by composing along
/// chains `K ⊊ L ⊊ H`.
fn fill_chains(
    lattice: &SubgroupLattice,
    levels: &[FgAbGroup],
    table: &mut BTreeMap<(usize, usize), AbHom>,
    downward: bool,
) -> Result<(), MackeyError> {
    // pairs ordered by increasing index gap so shorter chains are ready first
    let mut pairs: Vec<(usize, usize)> = (0..lattice.len())
        .flat_map(|h| lattice.subgroups_of(h).into_iter().map(move |k| (h, k)))
        .collect();
    pairs.sort_by_key(|&(h, k)| lattice.order(h) / lattice.order(k));
    for (h, k) in pairs {
        if table.contains_key(&(h, k)) {
            continue;
        }
        if h == k {
            table.insert((h, h), AbHom::identity(&levels[h]));
            continue;
        }
        let between = lattice
            .subgroups_of(h)
            .into_iter()
            .filter(|&l| l != h && l != k && lattice.is_subgroup(k, l))
            .find(|&l| table.contains_key(&(h, l)) && table.contains_key(&(l, k)));
        let Some(l) = between else {
            // into or out of a zero group there is only one map
            if levels[h].is_trivial() || levels[k].is_trivial() {
                let (s, t) = if downward { (h, k) } else { (k, h) };
                table.insert((h, k), AbHom::zero(&levels[s], &levels[t]));
                continue;
            }
            return Err(MackeyError::MissingMap(format!(
                "{} {h},{k}",
                if downward { "res" } else { "tr" }
            )));
        };
        let composed = if downward {
            table[&(l, k)].compose(&table[&(h, l)])?
        } else {
            table[&(h, l)].compose(&table[&(l, k)])?
        };
        table.insert((h, k), composed);
    }
    Ok(())
}

/// Completes the conjugation table from `c_{ab} = c_a ∘ c_b`. A map that
/// cannot be composed from the given ones defaults to the identity when `g`
/// normalizes `H`, and is an error otherwise.
fn fill_conjugations(
    lattice: &SubgroupLattice,
    levels: &[FgAbGroup],
    conj: &mut [Option<AbHom>],
) -> Result<(), MackeyError> {
    let group = lattice.group();
    let n = lattice.len();
    for h in 0..n {
        for &g in lattice.subgroup(h).elements() {
            if conj[g * n + h].is_none() {
                conj[g * n + h] = Some(AbHom::identity(&levels[h]));
            }
        }
    }
    compose_missing(lattice, conj)?;
    // whatever is still missing and normalizes H acts trivially
    for g in 0..group.order() {
        for h in 0..n {
            if conj[g * n + h].is_none() && lattice.conjugate(g, h) == h {
                conj[g * n + h] = Some(AbHom::identity(&levels[h]));
            }
        }
    }
    compose_missing(lattice, conj)?;
    match conj.iter().position(Option::is_none) {
        Some(i) => Err(MackeyError::MissingMap(format!("conj {},{}", i / n, i % n))),
        None => Ok(()),
    }
}

fn compose_missing(
    lattice: &SubgroupLattice,
    conj: &mut [Option<AbHom>],
) -> Result<(), MackeyError> {
    let group = lattice.group();
    let n = lattice.len();
    loop {
        let mut progress = false;
        for g in 0..group.order() {
            for h in 0..n {
                if conj[g * n + h].is_some() {
                    continue;
                }
                for b in 0..group.order() {
                    let a = group.mul(g, group.inv(b));
                    let bh = lattice.conjugate(b, h);
                    if let (Some(cb), Some(ca)) = (&conj[b * n + h], &conj[a * n + bh]) {
                        conj[g * n + h] = Some(ca.compose(cb)?);
                        progress = true;
                        break;
                    }
                }
            }
        }
        if !progress {
            return Ok(());
        }
    }
}

/// Serializes every level, every restriction and transfer between distinct
/// subgroups, and conjugation by the group generators.
pub fn mackey_to_json(m: &MackeyFunctor) -> MackeyJson {
    let lattice = m.lattice();
    let group: &PermGroup = m.group();
    let n = lattice.len();
    let levels = (0..n)
        .map(|h| (h.to_string(), PresentationJson::from(m.level(h))))
        .collect();
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for ((h, k), f) in m.res_maps() {
        if h != k {
            res.insert(format!("{h},{k}"), matrix_to_json(f.matrix()));
        }
    }
    for ((h, k), f) in m.tr_maps() {
        if h != k {
            tr.insert(format!("{h},{k}"), matrix_to_json(f.matrix()));
        }
    }
    let mut conj = BTreeMap::new();
    for g in group.generator_indices() {
        for h in 0..n {
            conj.insert(format!("{g},{h}"), matrix_to_json(m.conj(g, h).matrix()));
        }
    }
    MackeyJson {
        group: GroupSpec::Explicit(GroupJson::from(group)),
        levels,
        res,
        tr,
        conj,
    }
}
