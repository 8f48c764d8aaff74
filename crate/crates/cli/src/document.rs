//! The repository file format: versioned JSON documents with exact
//! rationals as `{"num": int, "den": int}`.

use serde::{Deserialize, Serialize};

use novflow::flowcat::{CategoryFlags, FlowCategoryDesc, FlowObject, LabelSize, MorphismRecord};
use novflow::novikov::{NovikovComplex, NovikovElement, NovikovGroupDesc, NovikovMatrix, Truncation};
use novflow::perturb::{BoundaryData, Poly, PolyMap, RatMat, SectionOnBox};
use novflow::strata::{CombStratSpace, StratumLabel};
use novflow::{Int, Rat};
use num_traits::ToPrimitive;

pub const FORMAT_VERSION: u32 = 1;

/// Parse failures: syntax (with line/column) vs schema (with a path).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocError {
    Parse { line: usize, column: usize, message: String },
    Schema { path: String, message: String },
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Parse { line, column, message } => {
                write!(f, "parse error at {}:{}: {}", line, column, message)
            }
            DocError::Schema { path, message } => {
                write!(f, "schema error at {}: {}", path, message)
            }
        }
    }
}

impl std::error::Error for DocError {}

// ---------------------------------------------------------------- rationals

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatDto {
    pub num: i64,
    pub den: i64,
}

impl RatDto {
    pub fn to_rat(&self, path: &str) -> Result<Rat, DocError> {
        if self.den <= 0 {
            return Err(DocError::Schema {
                path: path.into(),
                message: format!("denominator must be positive, got {}/{}", self.num, self.den),
            });
        }
        Ok(Rat::new(Int::from(self.num), Int::from(self.den)))
    }

    pub fn from_rat(r: &Rat, path: &str) -> Result<Self, DocError> {
        let num = r.numer().to_i64().ok_or_else(|| DocError::Schema {
            path: path.into(),
            message: "numerator exceeds the file format's integer range".into(),
        })?;
        let den = r.denom().to_i64().ok_or_else(|| DocError::Schema {
            path: path.into(),
            message: "denominator exceeds the file format's integer range".into(),
        })?;
        Ok(RatDto { num, den })
    }
}

fn int_to_i64(v: &Int, path: &str) -> Result<i64, DocError> {
    v.to_i64().ok_or_else(|| DocError::Schema {
        path: path.into(),
        message: "integer exceeds the file format's range".into(),
    })
}

// ------------------------------------------------------------ novikov bits

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TruncationDto {
    Exact(String), // "exact"
    Finite(RatDto),
}

impl<'de> Deserialize<'de> for TruncationDto {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => Ok(TruncationDto::Exact(s)),
            other => serde_json::from_value::<RatDto>(other)
                .map(TruncationDto::Finite)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl TruncationDto {
    pub fn to_core(&self, path: &str) -> Result<Truncation<Int>, DocError> {
        match self {
            TruncationDto::Exact(s) if s == "exact" => Ok(Truncation::Exact),
            TruncationDto::Exact(s) => Err(DocError::Schema {
                path: path.into(),
                message: format!("unknown truncation '{}'", s),
            }),
            TruncationDto::Finite(r) => Ok(Truncation::Finite(r.to_rat(path)?)),
        }
    }

    pub fn from_core(t: &Truncation<Int>, path: &str) -> Result<Self, DocError> {
        Ok(match t {
            Truncation::Exact => TruncationDto::Exact("exact".into()),
            Truncation::Finite(r) => TruncationDto::Finite(RatDto::from_rat(r, path)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub c: i64,
    pub e: RatDto,
}

pub type ElementDto = Vec<TermDto>;

fn element_to_core(
    terms: &ElementDto,
    truncation: &Truncation<Int>,
    path: &str,
) -> Result<NovikovElement<Int>, DocError> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        if t.c == 0 {
            return Err(DocError::Schema {
                path: format!("{}[{}]", path, i),
                message: "zero coefficients are not stored".into(),
            });
        }
        out.push((Int::from(t.c), t.e.to_rat(&format!("{}[{}].e", path, i))?));
    }
    Ok(NovikovElement::new(out, truncation.clone()))
}

fn element_from_core(e: &NovikovElement<Int>, path: &str) -> Result<ElementDto, DocError> {
    e.terms()
        .iter()
        .map(|(c, r)| {
            Ok(TermDto { c: int_to_i64(c, path)?, e: RatDto::from_rat(r, path)? })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub truncation: TruncationDto,
    pub entries: Vec<Vec<ElementDto>>,
}

impl MatrixDto {
    pub fn to_core(&self, path: &str) -> Result<NovikovMatrix<Int>, DocError> {
        let truncation = self.truncation.to_core(&format!("{}.truncation", path))?;
        if self.entries.len() != self.rows {
            return Err(DocError::Schema {
                path: format!("{}.entries", path),
                message: format!("expected {} rows, got {}", self.rows, self.entries.len()),
            });
        }
        let mut flat = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(DocError::Schema {
                    path: format!("{}.entries[{}]", path, i),
                    message: format!("expected {} columns, got {}", self.cols, row.len()),
                });
            }
            for (j, e) in row.iter().enumerate() {
                flat.push(element_to_core(e, &truncation, &format!("{}.entries[{}][{}]", path, i, j))?);
            }
        }
        NovikovMatrix::from_entries(self.rows, self.cols, flat, truncation).map_err(|e| DocError::Schema {
            path: path.into(),
            message: e.to_string(),
        })
    }

    pub fn from_core(m: &NovikovMatrix<Int>, path: &str) -> Result<Self, DocError> {
        let mut entries = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let mut row = Vec::with_capacity(m.cols());
            for j in 0..m.cols() {
                row.push(element_from_core(m.get(i, j), &format!("{}.entries[{}][{}]", path, i, j))?);
            }
            entries.push(row);
        }
        Ok(MatrixDto {
            rows: m.rows(),
            cols: m.cols(),
            truncation: TruncationDto::from_core(m.truncation(), path)?,
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub energy: Vec<RatDto>,
    pub grading: Vec<i64>,
}

impl GroupDto {
    pub fn to_core(&self, path: &str) -> Result<NovikovGroupDesc<Int>, DocError> {
        if self.energy.len() != self.grading.len() {
            return Err(DocError::Schema {
                path: path.into(),
                message: "energy and grading must have equal length".into(),
            });
        }
        let energy = self
            .energy
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_rat(&format!("{}.energy[{}]", path, i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NovikovGroupDesc::new(energy, self.grading.clone()))
    }

    pub fn from_core(g: &NovikovGroupDesc<Int>, path: &str) -> Result<Self, DocError> {
        Ok(GroupDto {
            energy: g
                .energy_gens()
                .iter()
                .map(|r| RatDto::from_rat(r, path))
                .collect::<Result<Vec<_>, _>>()?,
            grading: g.grading_gens().to_vec(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDto {
    pub id: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialDto {
    pub degree: i64,
    pub matrix: MatrixDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDto {
    pub group: GroupDto,
    pub truncation: TruncationDto,
    pub generators: Vec<GeneratorDto>,
    pub differentials: Vec<DifferentialDto>,
}

impl ComplexDto {
    pub fn to_core(&self, path: &str) -> Result<NovikovComplex<Int>, DocError> {
        let group = self.group.to_core(&format!("{}.group", path))?;
        let truncation = self.truncation.to_core(&format!("{}.truncation", path))?;
        let mut c = NovikovComplex::new(group, truncation);
        for g in &self.generators {
            c.add_generator(g.degree, g.id.clone());
        }
        for d in &self.differentials {
            let m = d.matrix.to_core(&format!("{}.differentials[{}]", path, d.degree))?;
            c.set_differential(d.degree, m).map_err(|e| DocError::Schema {
                path: format!("{}.differentials[{}]", path, d.degree),
                message: e.to_string(),
            })?;
        }
        Ok(c)
    }

    pub fn from_core(c: &NovikovComplex<Int>, path: &str) -> Result<Self, DocError> {
        let mut generators = Vec::new();
        for k in c.degrees() {
            for id in c.generators(k) {
                generators.push(GeneratorDto { id: id.clone(), degree: k });
            }
        }
        let mut differentials = Vec::new();
        for k in c.degrees().collect::<Vec<_>>() {
            let m = c.differential(k);
            if !m.is_zero() {
                differentials.push(DifferentialDto {
                    degree: k,
                    matrix: MatrixDto::from_core(&m, &format!("{}.differentials[{}]", path, k))?,
                });
            }
        }
        Ok(ComplexDto {
            group: GroupDto::from_core(&c.group, &format!("{}.group", path))?,
            truncation: TruncationDto::from_core(&c.truncation, path)?,
            generators,
            differentials,
        })
    }
}

// ------------------------------------------------------------ flow category

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowObjectDto {
    pub id: String,
    pub mu: i64,
    pub energy: RatDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDto {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub g: Vec<i64>,
    /// `"bullet"` or a nonnegative size.
    pub label: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsDto {
    pub proper: bool,
    pub e_proper: bool,
    pub e_positive: bool,
    pub gapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCategoryDto {
    pub group: GroupDto,
    pub objects: Vec<FlowObjectDto>,
    pub morphisms: Vec<MorphismDto>,
    pub flags: FlagsDto,
}

impl FlowCategoryDto {
    pub fn to_core(&self, path: &str) -> Result<FlowCategoryDesc<Int>, DocError> {
        let group = self.group.to_core(&format!("{}.group", path))?;
        let mut f = FlowCategoryDesc::new(group);
        f.flags = CategoryFlags {
            proper: self.flags.proper,
            e_proper: self.flags.e_proper,
            e_positive: self.flags.e_positive,
            gapped: self.flags.gapped,
        };
        for (i, o) in self.objects.iter().enumerate() {
            f.objects.push(FlowObject {
                id: o.id.clone(),
                mu: o.mu,
                energy: o.energy.to_rat(&format!("{}.objects[{}].energy", path, i))?,
            });
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            let label = match &m.label {
                serde_json::Value::String(s) if s == "bullet" => LabelSize::Bullet,
                serde_json::Value::Number(n) => {
                    let v = n.as_u64().ok_or_else(|| DocError::Schema {
                        path: format!("{}.morphisms[{}].label", path, i),
                        message: "label size must be a nonnegative integer".into(),
                    })?;
                    LabelSize::Size(v as usize)
                }
                other => {
                    return Err(DocError::Schema {
                        path: format!("{}.morphisms[{}].label", path, i),
                        message: format!("expected \"bullet\" or a size, got {}", other),
                    })
                }
            };
            f.morphisms.push(MorphismRecord {
                source: m.source.clone(),
                target: m.target.clone(),
                g: m.g.iter().map(|&x| Int::from(x)).collect(),
                label,
                count: m.count.map(Int::from),
            });
        }
        Ok(f)
    }

    pub fn from_core(f: &FlowCategoryDesc<Int>, path: &str) -> Result<Self, DocError> {
        let objects = f
            .objects
            .iter()
            .map(|o| {
                Ok(FlowObjectDto {
                    id: o.id.clone(),
                    mu: o.mu,
                    energy: RatDto::from_rat(&o.energy, path)?,
                })
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        let morphisms = f
            .morphisms
            .iter()
            .map(|m| {
                let label = match m.label {
                    LabelSize::Bullet => serde_json::Value::String("bullet".into()),
                    LabelSize::Size(s) => serde_json::Value::Number((s as u64).into()),
                };
                let count = match &m.count {
                    None => None,
                    Some(c) => Some(int_to_i64(c, path)?),
                };
                Ok(MorphismDto {
                    source: m.source.clone(),
                    target: m.target.clone(),
                    g: m.g.iter().map(|x| x.to_i64().unwrap_or(0)).collect(),
                    label,
                    count,
                })
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        Ok(FlowCategoryDto {
            group: GroupDto::from_core(&f.group, path)?,
            objects,
            morphisms,
            flags: FlagsDto {
                proper: f.flags.proper,
                e_proper: f.flags.e_proper,
                e_positive: f.flags.e_positive,
                gapped: f.flags.gapped,
            },
        })
    }
}

// -------------------------------------------------------------- strat space

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDto {
    pub id: usize,
    pub dim: usize,
    pub label: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDto {
    pub cell: usize,
    pub face: usize,
    pub incidence: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratSpaceDto {
    pub k: usize,
    pub cells: Vec<CellDto>,
    pub faces: Vec<FaceDto>,
}

impl StratSpaceDto {
    pub fn to_core(&self, path: &str) -> Result<CombStratSpace, DocError> {
        if self.k > 31 {
            return Err(DocError::Schema { path: path.into(), message: "k must be ≤ 31".into() });
        }
        let mut x = CombStratSpace::new(self.k);
        for (i, c) in self.cells.iter().enumerate() {
            if c.id != i {
                return Err(DocError::Schema {
                    path: format!("{}.cells[{}]", path, i),
                    message: format!("cell ids must be consecutive, got {}", c.id),
                });
            }
            for &e in &c.label {
                if e == 0 || e > self.k {
                    return Err(DocError::Schema {
                        path: format!("{}.cells[{}].label", path, i),
                        message: format!("label element {} outside 1..={}", e, self.k),
                    });
                }
            }
            x.add_cell(c.dim, StratumLabel::new(self.k, &c.label));
        }
        for f in &self.faces {
            x.add_face(f.cell, f.face, f.incidence);
        }
        Ok(x)
    }

    pub fn from_core(x: &CombStratSpace) -> Self {
        StratSpaceDto {
            k: x.k,
            cells: x
                .cells
                .iter()
                .map(|c| CellDto { id: c.id, dim: c.dim, label: c.label.elements() })
                .collect(),
            faces: x
                .faces
                .iter()
                .map(|f| FaceDto { cell: f.cell, face: f.face, incidence: f.incidence })
                .collect(),
        }
    }
}

// ------------------------------------------------------- polynomial things

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermDto {
    pub coeff: RatDto,
    pub exps: Vec<u32>,
}

pub type PolyDto = Vec<PolyTermDto>;

fn poly_to_core(p: &PolyDto, nvars: usize, path: &str) -> Result<Poly<Int>, DocError> {
    let mut out = Poly::zero(nvars);
    for (i, t) in p.iter().enumerate() {
        if t.exps.len() != nvars {
            return Err(DocError::Schema {
                path: format!("{}[{}]", path, i),
                message: format!("expected {} exponents, got {}", nvars, t.exps.len()),
            });
        }
        let c = t.coeff.to_rat(&format!("{}[{}].coeff", path, i))?;
        out = out.add(&Poly::monomial(nvars, &t.exps, c));
    }
    Ok(out)
}

fn poly_from_core(p: &Poly<Int>, path: &str) -> Result<PolyDto, DocError> {
    p.terms()
        .map(|(e, c)| Ok(PolyTermDto { coeff: RatDto::from_rat(c, path)?, exps: e.clone() }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionDto {
    pub corner_dim: usize,
    pub free_dim: usize,
    pub components: Vec<PolyDto>,
}

impl SectionDto {
    pub fn to_core(&self, path: &str) -> Result<SectionOnBox<Int>, DocError> {
        let nvars = self.corner_dim + self.free_dim;
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, p)| poly_to_core(p, nvars, &format!("{}.components[{}]", path, i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SectionOnBox::new(self.corner_dim, self.free_dim, PolyMap { components }))
    }

    pub fn from_core(s: &SectionOnBox<Int>, path: &str) -> Result<Self, DocError> {
        Ok(SectionDto {
            corner_dim: s.corner_dim,
            free_dim: s.free_dim,
            components: s
                .map
                .components
                .iter()
                .enumerate()
                .map(|(i, p)| poly_from_core(p, &format!("{}.components[{}]", path, i)))
                .collect::<Result<Vec<_>, _>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRepDto {
    pub v_dim: usize,
    pub w_dim: usize,
    pub generators: Vec<GroupRepGenDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRepGenDto {
    pub v: Vec<Vec<RatDto>>,
    pub w: Vec<Vec<RatDto>>,
}

impl GroupRepDto {
    pub fn to_core(&self, path: &str) -> Result<novflow::perturb::FiniteGroupRep<Int>, DocError> {
        let parse_mat = |m: &Vec<Vec<RatDto>>, p: &str| -> Result<RatMat<Int>, DocError> {
            let rows = m
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, v)| v.to_rat(&format!("{}[{}][{}]", p, i, j)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(RatMat::from_rows(&rows))
        };
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                Ok((
                    parse_mat(&g.v, &format!("{}.generators[{}].v", path, i))?,
                    parse_mat(&g.w, &format!("{}.generators[{}].w", path, i))?,
                ))
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        novflow::perturb::FiniteGroupRep::from_generators(self.v_dim, self.w_dim, gens)
            .map_err(|e| DocError::Schema { path: path.into(), message: e.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFaceDto {
    /// Stratum as a sorted list of 1-based corner indices.
    pub stratum: Vec<usize>,
    pub map: Vec<PolyDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDataDto {
    pub corner_dim: usize,
    pub free_dim: usize,
    pub out_dim: usize,
    pub faces: Vec<BoundaryFaceDto>,
}

impl BoundaryDataDto {
    pub fn to_core(&self, path: &str) -> Result<BoundaryData<Int>, DocError> {
        let mut bd = BoundaryData::new(self.corner_dim, self.free_dim, self.out_dim);
        let nvars = self.corner_dim + self.free_dim;
        for (i, face) in self.faces.iter().enumerate() {
            let mut mask = 0u32;
            for &e in &face.stratum {
                if e == 0 || e > self.corner_dim {
                    return Err(DocError::Schema {
                        path: format!("{}.faces[{}].stratum", path, i),
                        message: format!("stratum element {} outside 1..={}", e, self.corner_dim),
                    });
                }
                mask |= 1 << (e - 1);
            }
            let components = face
                .map
                .iter()
                .enumerate()
                .map(|(j, p)| poly_to_core(p, nvars, &format!("{}.faces[{}].map[{}]", path, i, j)))
                .collect::<Result<Vec<_>, _>>()?;
            if components.len() != self.out_dim {
                return Err(DocError::Schema {
                    path: format!("{}.faces[{}].map", path, i),
                    message: format!("expected {} components, got {}", self.out_dim, components.len()),
                });
            }
            bd.set_face(mask, PolyMap { components });
        }
        Ok(bd)
    }
}

// ------------------------------------------------------------------ wrapper

/// One parsed repository document.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    NovikovMatrix(MatrixDto),
    Complex(ComplexDto),
    FlowCategory(FlowCategoryDto),
    StratSpace(StratSpaceDto),
    Section(SectionDto),
    GroupRep(GroupRepDto),
    BoundaryData(BoundaryDataDto),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::NovikovMatrix(_) => "novikov_matrix",
            Document::Complex(_) => "complex",
            Document::FlowCategory(_) => "flow_category",
            Document::StratSpace(_) => "strat_space",
            Document::Section(_) => "section",
            Document::GroupRep(_) => "group_rep",
            Document::BoundaryData(_) => "boundary_data",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    fmt: u32,
    kind: String,
    payload: serde_json::Value,
}

/// Parse a repository document; syntax failures carry line/column, schema
/// failures carry a JSON path.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| DocError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if env.fmt != FORMAT_VERSION {
        return Err(DocError::Schema {
            path: "fmt".into(),
            message: format!("unsupported format version {}", env.fmt),
        });
    }
    let payload = env.payload;
    let schema = |e: serde_json::Error| DocError::Schema { path: "payload".into(), message: e.to_string() };
    let doc = match env.kind.as_str() {
        "novikov_matrix" => Document::NovikovMatrix(serde_json::from_value(payload).map_err(schema)?),
        "complex" => Document::Complex(serde_json::from_value(payload).map_err(schema)?),
        "flow_category" => Document::FlowCategory(serde_json::from_value(payload).map_err(schema)?),
        "strat_space" => Document::StratSpace(serde_json::from_value(payload).map_err(schema)?),
        "section" => Document::Section(serde_json::from_value(payload).map_err(schema)?),
        "group_rep" => Document::GroupRep(serde_json::from_value(payload).map_err(schema)?),
        "boundary_data" => Document::BoundaryData(serde_json::from_value(payload).map_err(schema)?),
        other => {
            return Err(DocError::Schema {
                path: "kind".into(),
                message: format!("unknown document kind '{}'", other),
            })
        }
    };
    // Semantic validation: run the payload-level conversion once.
    validate_document(&doc)?;
    Ok(doc)
}

/// Run the semantic conversion to catch schema-level problems eagerly.
pub fn validate_document(doc: &Document) -> Result<(), DocError> {
    match doc {
        Document::NovikovMatrix(d) => d.to_core("payload").map(|_| ()),
        Document::Complex(d) => d.to_core("payload").map(|_| ()),
        Document::FlowCategory(d) => d.to_core("payload").map(|_| ()),
        Document::StratSpace(d) => d.to_core("payload").map(|_| ()),
        Document::Section(d) => d.to_core("payload").map(|_| ()),
        Document::GroupRep(d) => d.to_core("payload").map(|_| ()),
        Document::BoundaryData(d) => d.to_core("payload").map(|_| ()),
    }
}

pub fn serialize_document(doc: &Document) -> String {
    let payload = match doc {
        Document::NovikovMatrix(d) => serde_json::to_value(d),
        Document::Complex(d) => serde_json::to_value(d),
        Document::FlowCategory(d) => serde_json::to_value(d),
        Document::StratSpace(d) => serde_json::to_value(d),
        Document::Section(d) => serde_json::to_value(d),
        Document::GroupRep(d) => serde_json::to_value(d),
        Document::BoundaryData(d) => serde_json::to_value(d),
    }
    .expect("documents serialize");
    let env = Envelope { fmt: FORMAT_VERSION, kind: doc.kind().to_string(), payload };
    serde_json::to_string_pretty(&env).expect("envelope serializes")
}
