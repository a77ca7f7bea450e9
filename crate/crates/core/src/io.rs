//! JSON formats for fields, matrices, groups, modules and forms.
//!
//! Matrix entries are field elements written as their coefficient bits.
//! Parsers reject malformed input with [`Error::Parse`] (or a cap or
//! validation error) and never panic.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::equiforms::{EquivForm, Reduction};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::gfield::{FieldSpec, Scalar};
use crate::group::PermGroup;
use crate::quadspace::QuadForm;
use crate::rep::{Rep, MAX_DIM};

/// Largest permutation degree accepted from input.
pub const MAX_DEGREE: usize = 1024;
/// Largest number of generators accepted from input.
pub const MAX_GENERATORS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_bits: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub degree: usize,
    pub gens: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepJson {
    pub field: FieldJson,
    pub dim: usize,
    pub mats: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadFormJson {
    pub field: FieldJson,
    pub dim: usize,
    pub upper: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivFormJson {
    pub group: GroupJson,
    pub field: FieldJson,
    pub rep_mats: Vec<Vec<Vec<u32>>>,
    pub upper: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn field_to_json(f: &FieldSpec) -> FieldJson {
    FieldJson {
        e: f.degree(),
        modulus_bits: Some(f.modulus_bits()),
    }
}

pub fn field_from_json(j: &FieldJson) -> Result<FieldSpec> {
    FieldSpec::new(j.e, j.modulus_bits)
}

fn rows_to_mat(f: &FieldSpec, rows: &[Vec<u32>], nrows: usize, ncols: usize) -> Result<Mat> {
    if nrows > MAX_DIM || ncols > MAX_DIM {
        return Err(Error::Cap(format!(
            "matrix shape {nrows}x{ncols} exceeds {MAX_DIM}"
        )));
    }
    if rows.len() != nrows {
        return Err(Error::Parse(format!(
            "expected {nrows} rows, found {}",
            rows.len()
        )));
    }
    let mut data = Vec::with_capacity(nrows * ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Parse(format!(
                "row {r} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for &b in row {
            data.push(f.scalar(b).map_err(|e| Error::Parse(e.to_string()))?);
        }
    }
    Mat::from_vec(f, nrows, ncols, data)
}

fn square_rows(f: &FieldSpec, rows: &[Vec<u32>]) -> Result<Mat> {
    rows_to_mat(f, rows, rows.len(), rows.len())
}

fn mat_rows(m: &Mat) -> Vec<Vec<u32>> {
    m.to_bits()
}

pub fn mat_to_json(m: &Mat) -> MatJson {
    MatJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: mat_rows(m),
    }
}

pub fn mat_from_json(j: &MatJson, f: &FieldSpec) -> Result<Mat> {
    rows_to_mat(f, &j.entries, j.rows, j.cols)
}

pub fn group_to_json(g: &PermGroup) -> GroupJson {
    GroupJson {
        degree: g.degree(),
        gens: g.generators().to_vec(),
    }
}

pub fn group_from_json(j: &GroupJson) -> Result<PermGroup> {
    if j.degree > MAX_DEGREE {
        return Err(Error::Cap(format!(
            "degree {} exceeds {MAX_DEGREE}",
            j.degree
        )));
    }
    if j.gens.len() > MAX_GENERATORS {
        return Err(Error::Cap(format!(
            "{} generators exceed {MAX_GENERATORS}",
            j.gens.len()
        )));
    }
    PermGroup::new(j.degree, j.gens.clone())
}

pub fn rep_to_json(v: &Rep) -> RepJson {
    RepJson {
        field: field_to_json(v.field()),
        dim: v.dim(),
        mats: v.mats().iter().map(mat_rows).collect(),
    }
}

pub fn rep_from_json(j: &RepJson, group: &Arc<PermGroup>) -> Result<Rep> {
    let f = field_from_json(&j.field)?;
    let mats = mats_from_rows(&f, &j.mats, j.dim)?;
    build_rep(group, &f, mats, j.dim)
}

fn build_rep(group: &Arc<PermGroup>, f: &FieldSpec, mats: Vec<Mat>, dim: usize) -> Result<Rep> {
    if mats.len() != group.num_generators() {
        return Err(Error::Rep(format!(
            "{} matrices for {} group generators",
            mats.len(),
            group.num_generators()
        )));
    }
    if mats.is_empty() || dim == 0 {
        // nothing to validate beyond the shapes checked while parsing
        return Ok(Rep::new_unchecked(group.clone(), f, dim, mats));
    }
    Rep::new(group.clone(), f, mats)
}

fn mats_from_rows(f: &FieldSpec, mats: &[Vec<Vec<u32>>], dim: usize) -> Result<Vec<Mat>> {
    if mats.len() > MAX_GENERATORS {
        return Err(Error::Cap(format!(
            "{} matrices exceed {MAX_GENERATORS}",
            mats.len()
        )));
    }
    mats.iter().map(|m| rows_to_mat(f, m, dim, dim)).collect()
}

pub fn quadform_to_json(q: &QuadForm) -> QuadFormJson {
    QuadFormJson {
        field: field_to_json(q.field()),
        dim: q.dim(),
        upper: mat_rows(q.upper()),
    }
}

pub fn quadform_from_json(j: &QuadFormJson) -> Result<QuadForm> {
    let f = field_from_json(&j.field)?;
    QuadForm::new(rows_to_mat(&f, &j.upper, j.dim, j.dim)?)
}

pub fn equivform_to_json(x: &EquivForm, label: Option<&str>) -> EquivFormJson {
    EquivFormJson {
        group: group_to_json(x.catalog().group()),
        field: field_to_json(x.rep().field()),
        rep_mats: x.rep().mats().iter().map(mat_rows).collect(),
        upper: mat_rows(x.form().upper()),
        label: label.map(str::to_owned),
    }
}

/// Everything in an equivariant form file, validated except for the
/// G-invariance and non-degeneracy checks (which need a catalog).
#[derive(Clone, Debug)]
pub struct FormData {
    pub group: Arc<PermGroup>,
    pub field: FieldSpec,
    pub rep: Rep,
    pub form: QuadForm,
    pub label: Option<String>,
}

pub fn formdata_from_json(j: &EquivFormJson) -> Result<FormData> {
    let group = Arc::new(group_from_json(&j.group)?);
    let field = field_from_json(&j.field)?;
    let dim = j.upper.len();
    let mats = mats_from_rows(&field, &j.rep_mats, dim)?;
    let rep = build_rep(&group, &field, mats, dim)?;
    let form = QuadForm::new(square_rows(&field, &j.upper)?)?;
    Ok(FormData {
        group,
        field,
        rep,
        form,
        label: j.label.clone(),
    })
}

impl FormData {
    pub fn into_form(self, catalog: &Arc<Catalog>) -> Result<EquivForm> {
        EquivForm::new(catalog, self.rep, self.form)
    }
}

pub fn parse_field(s: &str) -> Result<FieldSpec> {
    field_from_json(&from_json(s)?)
}

/// Parses a matrix over the given field.
pub fn parse_mat(s: &str, f: &FieldSpec) -> Result<Mat> {
    mat_from_json(&from_json(s)?, f)
}

pub fn parse_group(s: &str) -> Result<PermGroup> {
    group_from_json(&from_json(s)?)
}

pub fn parse_rep(s: &str, group: &Arc<PermGroup>) -> Result<Rep> {
    rep_from_json(&from_json(s)?, group)
}

pub fn parse_quadform(s: &str) -> Result<QuadForm> {
    quadform_from_json(&from_json(s)?)
}

pub fn parse_form(s: &str) -> Result<FormData> {
    formdata_from_json(&from_json(s)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub id: usize,
    pub dim: usize,
    pub self_dual: bool,
    pub dual: usize,
    #[serde(rename = "type")]
    pub mtype: String,
    pub mats: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub field: FieldJson,
    pub group_order: usize,
    pub s: usize,
    pub classes: Vec<ClassJson>,
}

pub fn catalog_to_json(c: &Catalog) -> CatalogJson {
    CatalogJson {
        field: field_to_json(c.field()),
        group_order: c.group().order(),
        s: c.s(),
        classes: c
            .simples()
            .iter()
            .map(|s| ClassJson {
                id: s.id,
                dim: s.dim(),
                self_dual: s.self_dual,
                dual: s.dual_id,
                mtype: s.mtype.as_str().into(),
                mats: s.rep.mats().iter().map(mat_rows).collect(),
            })
            .collect(),
    }
}

/// Reduction transcript: the isotropic submodule removed at each step, in
/// the basis of the form current at that step, and the final form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptJson {
    pub steps: Vec<MatJson>,
    pub result: EquivFormJson,
}

pub fn transcript_to_json(r: &Reduction) -> TranscriptJson {
    TranscriptJson {
        steps: r.steps.iter().map(mat_to_json).collect(),
        result: equivform_to_json(&r.form, None),
    }
}

pub fn scalars_to_bits(v: &[Scalar]) -> Vec<u32> {
    v.iter().map(|s| s.0 as u32).collect()
}
