//! Canonical JSON formats for graphs, decomposition trees, edit transcripts,
//! repair reports, and hardness bundles.
//!
//! Writers emit compact JSON with fixed field order and a trailing newline,
//! so loading a written file and saving it again reproduces the bytes
//! exactly. Colored graphs store the upper triangle row major: pair (u,v)
//! with u < v sits at index u·n − u(u+1)/2 + (v−u−1), colors 1-based.
//! Digraph vertex ids are 0-based. Edit transcripts are JSON lines, one
//! recoloring per line, applied in order.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use gallai_core::{
    pair_index, Color, ColoredCompleteGraph, CopyFamily, Digraph, Edit, EditTranscript,
    GallaiTree, GraphError, PartitionCase, RepairOutcome, RepairTree,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// serde_json positions are line/column within the file.
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path} line {line}: {source}")]
    JsonLine {
        path: String,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn io_err(path: &Path, source: std::io::Error) -> FormatError {
    FormatError::Io { path: path.display().to_string(), source }
}

fn json_err(path: &Path, source: serde_json::Error) -> FormatError {
    FormatError::Json { path: path.display().to_string(), source }
}

fn invalid(path: &Path, reason: impl Into<String>) -> FormatError {
    FormatError::Invalid { path: path.display().to_string(), reason: reason.into() }
}

/// Serializes a value in the canonical file form: compact JSON plus newline.
pub fn to_canonical_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(value).expect("serialization is infallible");
    bytes.push(b'\n');
    bytes
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    fs::write(path, to_canonical_bytes(value)).map_err(|e| io_err(path, e))
}

/// Parses with the recursion limit disabled: decomposition trees of chain
/// shape nest about twice as deep as the vertex count.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    de.disable_recursion_limit();
    T::deserialize(&mut de).map_err(|e| json_err(path, e))
}

// Colored complete graphs

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredGraphDto {
    pub n: usize,
    pub k: Color,
    pub colors: Vec<Color>,
}

impl From<&ColoredCompleteGraph> for ColoredGraphDto {
    fn from(g: &ColoredCompleteGraph) -> Self {
        ColoredGraphDto { n: g.n(), k: g.k(), colors: g.colors().to_vec() }
    }
}

impl TryFrom<ColoredGraphDto> for ColoredCompleteGraph {
    type Error = GraphError;

    fn try_from(d: ColoredGraphDto) -> Result<Self, GraphError> {
        ColoredCompleteGraph::from_colors(d.n, d.k, d.colors)
    }
}

pub fn write_colored(path: &Path, g: &ColoredCompleteGraph) -> Result<(), FormatError> {
    write_json(path, &ColoredGraphDto::from(g))
}

pub fn read_colored(path: &Path) -> Result<ColoredCompleteGraph, FormatError> {
    let dto: ColoredGraphDto = read_json(path)?;
    ColoredCompleteGraph::try_from(dto).map_err(FormatError::from)
}

// Digraphs

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDto {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Digraph> for DigraphDto {
    fn from(d: &Digraph) -> Self {
        DigraphDto { n: d.n(), edges: d.edges() }
    }
}

impl TryFrom<DigraphDto> for Digraph {
    type Error = GraphError;

    fn try_from(d: DigraphDto) -> Result<Self, GraphError> {
        Digraph::from_edges(d.n, &d.edges)
    }
}

pub fn write_digraph(path: &Path, d: &Digraph) -> Result<(), FormatError> {
    write_json(path, &DigraphDto::from(d))
}

pub fn read_digraph(path: &Path) -> Result<Digraph, FormatError> {
    let dto: DigraphDto = read_json(path)?;
    Digraph::try_from(dto).map_err(FormatError::from)
}

/// A file holding either host kind; the field sets are disjoint, so the
/// variant is recognized from the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HostDto {
    Colored(ColoredGraphDto),
    Directed(DigraphDto),
}

impl From<&gallai_core::Host> for HostDto {
    fn from(h: &gallai_core::Host) -> Self {
        match h {
            gallai_core::Host::Colored(g) => HostDto::Colored(g.into()),
            gallai_core::Host::Directed(d) => HostDto::Directed(d.into()),
        }
    }
}

impl TryFrom<HostDto> for gallai_core::Host {
    type Error = GraphError;

    fn try_from(dto: HostDto) -> Result<Self, GraphError> {
        Ok(match dto {
            HostDto::Colored(g) => gallai_core::Host::Colored(g.try_into()?),
            HostDto::Directed(d) => gallai_core::Host::Directed(d.try_into()?),
        })
    }
}

pub fn read_host(path: &Path) -> Result<gallai_core::Host, FormatError> {
    let dto: HostDto = read_json(path)?;
    gallai_core::Host::try_from(dto).map_err(FormatError::from)
}

pub fn write_host(path: &Path, h: &gallai_core::Host) -> Result<(), FormatError> {
    write_json(path, &HostDto::from(h))
}

// Decomposition trees

/// Nested tree: leaves are `{"vertex": id}`, inner nodes carry the color
/// pair, the child list, and the cross colors as explicit `[i, j, c]`
/// triples over child indexes i < j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeDto {
    Leaf {
        vertex: usize,
    },
    Node {
        pair: (Color, Color),
        children: Vec<TreeDto>,
        cross: Vec<(usize, usize, Color)>,
    },
}

impl From<&GallaiTree> for TreeDto {
    fn from(t: &GallaiTree) -> Self {
        match t {
            GallaiTree::Leaf { vertex } => TreeDto::Leaf { vertex: *vertex },
            GallaiTree::Node { pair, children, cross } => {
                let c = children.len();
                let mut triples = Vec::with_capacity(cross.len());
                for i in 0..c {
                    for j in i + 1..c {
                        triples.push((i, j, cross[pair_index(c, i, j)]));
                    }
                }
                TreeDto::Node {
                    pair: *pair,
                    children: children.iter().map(TreeDto::from).collect(),
                    cross: triples,
                }
            }
        }
    }
}

fn tree_from_dto(dto: &TreeDto, path: &Path) -> Result<GallaiTree, FormatError> {
    match dto {
        TreeDto::Leaf { vertex } => Ok(GallaiTree::Leaf { vertex: *vertex }),
        TreeDto::Node { pair, children, cross } => {
            let c = children.len();
            let expected = c * (c.saturating_sub(1)) / 2;
            if cross.len() != expected {
                return Err(invalid(
                    path,
                    format!("node with {c} children needs {expected} cross entries, has {}", cross.len()),
                ));
            }
            let mut flat: Vec<Option<Color>> = vec![None; expected];
            for &(i, j, color) in cross {
                if i >= j || j >= c {
                    return Err(invalid(path, format!("cross entry ({i},{j}) out of order or range")));
                }
                let slot = &mut flat[pair_index(c, i, j)];
                if slot.is_some() {
                    return Err(invalid(path, format!("cross entry ({i},{j}) appears twice")));
                }
                *slot = Some(color);
            }
            let kids = children
                .iter()
                .map(|ch| tree_from_dto(ch, path))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GallaiTree::Node {
                pair: *pair,
                children: kids,
                cross: flat.into_iter().map(|c| c.expect("all slots filled")).collect(),
            })
        }
    }
}

pub fn write_tree(path: &Path, t: &GallaiTree) -> Result<(), FormatError> {
    write_json(path, &TreeDto::from(t))
}

/// Reads and validates a tree file, including the structural invariants
/// (vertex ids form 0..n, cross colors drawn from the node pairs).
pub fn read_tree(path: &Path) -> Result<GallaiTree, FormatError> {
    let dto: TreeDto = read_json(path)?;
    let tree = tree_from_dto(&dto, path)?;
    tree.validate().map_err(|e| invalid(path, e.to_string()))?;
    Ok(tree)
}

// Edit transcripts

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EditDto {
    pub u: usize,
    pub v: usize,
    pub old: Color,
    pub new: Color,
}

pub fn transcript_to_jsonl(t: &EditTranscript) -> Vec<u8> {
    let mut out = Vec::new();
    for e in t.edits() {
        let dto = EditDto { u: e.u, v: e.v, old: e.old, new: e.new };
        out.extend_from_slice(&serde_json::to_vec(&dto).expect("serialization is infallible"));
        out.push(b'\n');
    }
    out
}

pub fn write_transcript(path: &Path, t: &EditTranscript) -> Result<(), FormatError> {
    fs::write(path, transcript_to_jsonl(t)).map_err(|e| io_err(path, e))
}

pub fn read_transcript(path: &Path) -> Result<EditTranscript, FormatError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut t = EditTranscript::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let dto: EditDto = serde_json::from_str(line).map_err(|e| FormatError::JsonLine {
            path: path.display().to_string(),
            line: idx + 1,
            source: e,
        })?;
        t.record(dto.u, dto.v, dto.old, dto.new)?;
    }
    Ok(t)
}

pub fn edit_dtos(t: &EditTranscript) -> Vec<EditDto> {
    t.edits().iter().map(|e: &Edit| EditDto { u: e.u, v: e.v, old: e.old, new: e.new }).collect()
}

// Repair reports

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseDto {
    DominantVertex { vertex: usize, color: Color },
    RareColor { color: Color },
    Sampled { attempts: usize },
}

impl From<PartitionCase> for CaseDto {
    fn from(c: PartitionCase) -> Self {
        match c {
            PartitionCase::DominantVertex { vertex, color } => {
                CaseDto::DominantVertex { vertex, color }
            }
            PartitionCase::RareColor { color } => CaseDto::RareColor { color },
            PartitionCase::Sampled { attempts } => CaseDto::Sampled { attempts },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepairTreeDto {
    Split {
        size: usize,
        a: Color,
        b: Color,
        case: CaseDto,
        cost: u64,
        cross_pairs: u64,
        children: Vec<RepairTreeDto>,
    },
    Cleanup {
        size: usize,
        recolored: u64,
    },
    Failed {
        size: usize,
        attempts: usize,
    },
    Unprocessed {
        size: usize,
    },
}

impl From<&RepairTree> for RepairTreeDto {
    fn from(t: &RepairTree) -> Self {
        match t {
            RepairTree::Split { size, a, b, case, cost, cross_pairs, children } => {
                RepairTreeDto::Split {
                    size: *size,
                    a: *a,
                    b: *b,
                    case: (*case).into(),
                    cost: *cost,
                    cross_pairs: *cross_pairs,
                    children: children.iter().map(RepairTreeDto::from).collect(),
                }
            }
            RepairTree::Cleanup { size, recolored } => {
                RepairTreeDto::Cleanup { size: *size, recolored: *recolored }
            }
            RepairTree::Failed { size, attempts } => {
                RepairTreeDto::Failed { size: *size, attempts: *attempts }
            }
            RepairTree::Unprocessed { size } => RepairTreeDto::Unprocessed { size: *size },
        }
    }
}

/// The repair report: total edit cost, the budget parameters, whether the
/// run is certified (complete, every split within its exact budget, and the
/// edited graph re-counted rainbow-free), and the partition tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepairReportDto {
    pub cost: u64,
    pub epsilon: f64,
    pub n: usize,
    pub certified: bool,
    pub tree: RepairTreeDto,
}

impl RepairReportDto {
    pub fn new(out: &RepairOutcome, certified: bool) -> Self {
        RepairReportDto {
            cost: out.total_cost,
            epsilon: out.epsilon,
            n: out.n,
            certified,
            tree: (&out.tree).into(),
        }
    }
}

// Hardness bundles: host.json, blowup.json, family.json, claims.json.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleKind {
    Triangle,
    F4,
    D3,
}

/// Planted copies as explicit tuples. `roles[i]` names the pattern vertex
/// played by position i of every tuple; writers emit the identity map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDto {
    pub pattern_vertices: usize,
    pub roles: Vec<usize>,
    pub copies: Vec<Vec<usize>>,
    pub injections: u64,
    pub automorphisms: u64,
}

impl From<&CopyFamily> for FamilyDto {
    fn from(f: &CopyFamily) -> Self {
        FamilyDto {
            pattern_vertices: f.pattern_vertices,
            roles: (0..f.pattern_vertices).collect(),
            copies: f.copies.clone(),
            injections: f.injections,
            automorphisms: f.automorphisms,
        }
    }
}

/// Normalizes the file form to positional tuples (position = pattern
/// vertex), honoring a non-identity role map.
pub fn family_from_dto(dto: &FamilyDto, path: &Path) -> Result<CopyFamily, FormatError> {
    let f = dto.pattern_vertices;
    if dto.roles.len() != f {
        return Err(invalid(path, format!("role map has {} entries for {f} roles", dto.roles.len())));
    }
    let mut seen = vec![false; f];
    for &r in &dto.roles {
        if r >= f || seen[r] {
            return Err(invalid(path, "role map is not a permutation of the pattern vertices"));
        }
        seen[r] = true;
    }
    let mut copies = Vec::with_capacity(dto.copies.len());
    for (ci, tuple) in dto.copies.iter().enumerate() {
        if tuple.len() != f {
            return Err(invalid(path, format!("copy {ci} has arity {}, pattern needs {f}", tuple.len())));
        }
        let mut positional = vec![0usize; f];
        for (i, &v) in tuple.iter().enumerate() {
            positional[dto.roles[i]] = v;
        }
        copies.push(positional);
    }
    Ok(CopyFamily {
        pattern_vertices: f,
        copies,
        injections: dto.injections,
        automorphisms: dto.automorphisms,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimsDto {
    pub planted_host_count: u64,
    pub planted_blown_count: u64,
    pub host_total_bound: u64,
    pub host_total_count: Option<u64>,
    pub pair_disjoint: bool,
    pub implied_epsilon: f64,
}

impl From<&gallai_core::Claims> for ClaimsDto {
    fn from(c: &gallai_core::Claims) -> Self {
        ClaimsDto {
            planted_host_count: c.planted_host_count,
            planted_blown_count: c.planted_blown_count,
            host_total_bound: c.host_total_bound,
            host_total_count: c.host_total_count,
            pair_disjoint: c.pair_disjoint,
            implied_epsilon: c.implied_epsilon,
        }
    }
}

/// Everything the verifier needs beyond the raw graphs: the construction
/// kind (fixing the equation family), the pattern, the block layout, the
/// avoiding set, the inside rule of the blowup, and the claimed numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimsFileDto {
    pub kind: BundleKind,
    pub m: usize,
    pub factor: usize,
    pub pattern_vertices: usize,
    pub blocks: Vec<(usize, usize)>,
    pub avoiding: Vec<u64>,
    pub pattern: HostDto,
    /// Color painted inside blowup classes; absent for digraph bundles,
    /// whose classes span transitive tournaments. For the triangle kind
    /// this is also the avoided color.
    pub inside_color: Option<Color>,
    pub claims: ClaimsDto,
}

pub struct Bundle {
    pub host: gallai_core::Host,
    pub blown: gallai_core::Host,
    pub family: CopyFamily,
    pub meta: ClaimsFileDto,
}

pub const BUNDLE_FILES: [&str; 4] = ["host.json", "blowup.json", "family.json", "claims.json"];

pub fn write_bundle(
    dir: &Path,
    inst: &gallai_core::HardnessInstance,
    kind: BundleKind,
    pattern: HostDto,
    inside_color: Option<Color>,
) -> Result<(), FormatError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    write_host(&dir.join("host.json"), &inst.host)?;
    write_host(&dir.join("blowup.json"), &inst.blown)?;
    write_json(&dir.join("family.json"), &FamilyDto::from(&inst.host_family))?;
    let claims = ClaimsFileDto {
        kind,
        m: inst.m,
        factor: inst.factor,
        pattern_vertices: inst.pattern_vertices,
        blocks: inst.blocks.clone(),
        avoiding: inst.avoiding.clone(),
        pattern,
        inside_color,
        claims: (&inst.claims).into(),
    };
    write_json(&dir.join("claims.json"), &claims)
}

pub fn read_bundle(dir: &Path) -> Result<Bundle, FormatError> {
    let host = read_host(&dir.join("host.json"))?;
    let blown = read_host(&dir.join("blowup.json"))?;
    let fam_path = dir.join("family.json");
    let fam_dto: FamilyDto = read_json(&fam_path)?;
    let family = family_from_dto(&fam_dto, &fam_path)?;
    let meta: ClaimsFileDto = read_json(&dir.join("claims.json"))?;
    Ok(Bundle { host, blown, family, meta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gallai_core::{compose, decompose, random_gallai_tree, TreeParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tmp(name: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("gallai-lab-format-tests");
        fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn colored_graph_bytes_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = ColoredCompleteGraph::from_fn(17, 3, |_, _| rng.gen_range(1..=3)).unwrap();
        let path = tmp("colored.json");
        write_colored(&path, &g).unwrap();
        let bytes = fs::read(&path).unwrap();
        let back = read_colored(&path).unwrap();
        assert_eq!(back, g);
        assert_eq!(to_canonical_bytes(&ColoredGraphDto::from(&back)), bytes);
    }

    #[test]
    fn digraph_bytes_round_trip_is_insertion_order_free() {
        let d = Digraph::from_edges(5, &[(4, 0), (0, 1), (2, 1), (1, 2)]).unwrap();
        let path = tmp("digraph.json");
        write_digraph(&path, &d).unwrap();
        let bytes = fs::read(&path).unwrap();
        let back = read_digraph(&path).unwrap();
        assert_eq!(back.edges(), d.edges());
        assert_eq!(to_canonical_bytes(&DigraphDto::from(&back)), bytes);
    }

    #[test]
    fn tree_round_trip_preserves_structure() {
        let tree = random_gallai_tree(60, &TreeParams::default(), 9).unwrap();
        let path = tmp("tree.json");
        write_tree(&path, &tree).unwrap();
        let back = read_tree(&path).unwrap();
        assert_eq!(back, tree);
        assert_eq!(compose(&back).unwrap(), compose(&tree).unwrap());
    }

    #[test]
    fn deep_chain_tree_parses_past_default_recursion_limit() {
        // Chain-shaped decomposition: each level splits one vertex off, so
        // the JSON nests ~2 levels per vertex. 120 vertices overflows the
        // default serde_json limit of 128 if left enabled.
        let g = ColoredCompleteGraph::from_fn(120, 3, |u, _| if u % 2 == 0 { 1 } else { 2 })
            .unwrap();
        let tree = decompose(&g).unwrap();
        let path = tmp("chain.json");
        write_tree(&path, &tree).unwrap();
        assert_eq!(read_tree(&path).unwrap(), tree);
    }

    #[test]
    fn malformed_cross_entries_are_rejected() {
        let path = tmp("bad-tree.json");
        fs::write(
            &path,
            b"{\"pair\":[1,2],\"children\":[{\"vertex\":0},{\"vertex\":1}],\"cross\":[]}\n",
        )
        .unwrap();
        assert!(matches!(read_tree(&path), Err(FormatError::Invalid { .. })));
        fs::write(
            &path,
            b"{\"pair\":[1,2],\"children\":[{\"vertex\":0},{\"vertex\":1}],\"cross\":[[1,0,1]]}\n",
        )
        .unwrap();
        assert!(matches!(read_tree(&path), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn transcript_jsonl_round_trip() {
        let mut t = EditTranscript::new();
        t.record(0, 3, 1, 2).unwrap();
        t.record(1, 2, 3, 3).unwrap();
        t.record(4, 0, 2, 1).unwrap();
        let path = tmp("edits.jsonl");
        write_transcript(&path, &t).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("{\"u\":0,\"v\":3,\"old\":1,\"new\":2}\n"));
        let back = read_transcript(&path).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn transcript_parse_error_carries_line_number() {
        let path = tmp("broken.jsonl");
        fs::write(&path, b"{\"u\":0,\"v\":1,\"old\":1,\"new\":2}\n{\"u\":}\n").unwrap();
        match read_transcript(&path) {
            Err(FormatError::JsonLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected line diagnostic, got {other:?}"),
        }
    }

    #[test]
    fn role_map_permutation_is_honored() {
        let dto = FamilyDto {
            pattern_vertices: 3,
            roles: vec![2, 0, 1],
            copies: vec![vec![10, 11, 12]],
            injections: 1,
            automorphisms: 1,
        };
        let fam = family_from_dto(&dto, Path::new("family.json")).unwrap();
        // position 0 plays role 2, position 1 role 0, position 2 role 1
        assert_eq!(fam.copies[0], vec![11, 12, 10]);
        let bad = FamilyDto { roles: vec![0, 0, 1], ..dto };
        assert!(family_from_dto(&bad, Path::new("family.json")).is_err());
    }
}
