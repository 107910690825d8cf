use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::lattice::{admissible_normals, WeightList};
use crate::linalg::dot_int_rat;

use super::polyhedron::{affine_rank, vertex_enumeration, Halfspace};
use super::window::Window;

/// Periodic arrangement of all lattice translates `{⟨n_j, v⟩ = k}` of
/// the hyperplanes with the given primitive normals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<i64>>,
}

impl Arrangement {
    pub fn new(dim: usize, mut normals: Vec<Vec<i64>>) -> Self {
        normals.sort();
        normals.dedup();
        assert!(normals.iter().all(|n| n.len() == dim));
        Arrangement { dim, normals }
    }

    /// Arrangement of the admissible hyperplanes of `X`.
    pub fn of(x: &WeightList) -> Self {
        Arrangement::new(x.dim(), admissible_normals(x))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn union(&self, other: &Arrangement) -> Arrangement {
        let mut n = self.normals.clone();
        n.extend(other.normals.iter().cloned());
        Arrangement::new(self.dim, n)
    }

    /// Every hyperplane of `other` is a hyperplane of `self`.
    pub fn refines(&self, other: &Arrangement) -> bool {
        other.normals.iter().all(|n| self.normals.contains(n))
    }

    /// `⌊⟨n_j, v⟩⌋` for every normal; `IrregularPoint` on a wall.
    pub fn key(&self, v: &[Rat]) -> Result<Vec<i64>> {
        self.normals
            .iter()
            .map(|n| {
                let x = dot_int_rat(n, v);
                if x.is_integer() {
                    Err(Error::IrregularPoint)
                } else {
                    Ok(x.floor_i64())
                }
            })
            .collect()
    }

    pub fn is_regular(&self, v: &[Rat]) -> bool {
        self.key(v).is_ok()
    }

    /// Shift of alcove keys under translation by a lattice vector.
    pub fn key_shift(&self, lambda: &[i64]) -> Vec<i64> {
        self.normals
            .iter()
            .map(|n| crate::linalg::dot_int(n, lambda))
            .collect()
    }
}

/// One alcove of an arrangement intersected with a window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub key: Vec<i64>,
    pub interior: Vec<Rat>,
    pub vertices: Vec<Vec<Rat>>,
    /// Irredundant H-representation.
    pub halfspaces: Vec<Halfspace>,
    /// `(normal index, level)` of the arrangement walls bounding the cell.
    pub walls: Vec<(usize, i64)>,
}

impl Cell {
    pub fn polyhedron(&self) -> super::Polyhedron {
        super::Polyhedron::new(self.interior.len(), self.halfspaces.clone())
    }

    pub fn volume(&self) -> Rat {
        super::polyhedron::triangulate(&self.vertices, &self.halfspaces, self.interior.len())
            .iter()
            .map(|s| super::polyhedron::simplex_volume(&self.vertices, s))
            .sum()
    }

    /// The same alcove translated by a lattice vector (vertices shifted).
    pub fn translated(&self, arr: &Arrangement, lambda: &[i64]) -> Cell {
        let shift = arr.key_shift(lambda);
        let lam: Vec<Rat> = lambda.iter().map(|&x| Rat::from_int(x)).collect();
        let mv = |p: &Vec<Rat>| p.iter().zip(&lam).map(|(a, b)| a + b).collect::<Vec<Rat>>();
        Cell {
            key: self.key.iter().zip(&shift).map(|(k, d)| k + d).collect(),
            interior: mv(&self.interior),
            vertices: self.vertices.iter().map(mv).collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| {
                    Halfspace::new(
                        h.normal.clone(),
                        &h.offset + &crate::linalg::dot_rat(&h.normal, &lam),
                    )
                })
                .collect(),
            walls: self
                .walls
                .iter()
                .map(|&(j, l)| (j, l + shift[j]))
                .collect(),
        }
    }
}

fn cell_constraints(arr: &Arrangement, window: &Window, key: &[i64]) -> (Vec<Halfspace>, Vec<Option<(usize, i64)>>) {
    let s = arr.dim;
    let mut hs = Vec::new();
    let mut tags = Vec::new();
    for (j, n) in arr.normals.iter().enumerate() {
        let nr: Vec<Rat> = n.iter().map(|&x| Rat::from_int(x)).collect();
        let neg: Vec<Rat> = nr.iter().map(|x| -x).collect();
        hs.push(Halfspace::new(nr, Rat::from_int(key[j] + 1)));
        tags.push(Some((j, key[j] + 1)));
        hs.push(Halfspace::new(neg, Rat::from_int(-key[j])));
        tags.push(Some((j, key[j])));
    }
    for i in 0..s {
        let mut e = vec![Rat::zero(); s];
        e[i] = Rat::one();
        hs.push(Halfspace::new(e.clone(), window.hi()[i].clone()));
        tags.push(None);
        e[i] = -Rat::one();
        hs.push(Halfspace::new(e, -&window.lo()[i]));
        tags.push(None);
    }
    (hs, tags)
}

/// Builds the cell with the given key, or `None` if it is empty in the
/// window.
fn make_cell(arr: &Arrangement, window: &Window, key: &[i64]) -> Option<Cell> {
    let s = arr.dim;
    let (hs, tags) = cell_constraints(arr, window, key);
    let vertices = vertex_enumeration(s, &hs);
    if vertices.len() <= s || affine_rank(&vertices) < s {
        return None;
    }
    let n = Rat::from_int(vertices.len() as i64);
    let mut interior = vec![Rat::zero(); s];
    for v in &vertices {
        for (a, b) in interior.iter_mut().zip(v) {
            *a += b;
        }
    }
    for a in interior.iter_mut() {
        *a = &*a / &n;
    }
    let mut halfspaces = Vec::new();
    let mut walls = Vec::new();
    for (h, tag) in hs.iter().zip(&tags) {
        let t: Vec<Vec<Rat>> = vertices
            .iter()
            .filter(|v| h.slack(v).is_zero())
            .cloned()
            .collect();
        if t.len() >= s && affine_rank(&t) == s - 1 && !halfspaces.contains(h) {
            halfspaces.push(h.clone());
            if let Some(w) = tag {
                walls.push(*w);
            }
        }
    }
    Some(Cell {
        key: key.to_vec(),
        interior,
        vertices,
        halfspaces,
        walls,
    })
}

fn generic_start(window: &Window, arr: &Arrangement) -> Vec<Rat> {
    // walk through a deterministic sequence of irregular-looking fractions
    let fr = [(4142, 10000), (3183, 10000), (5772, 10000), (2718, 10000)];
    for attempt in 0..1000i64 {
        let v: Vec<Rat> = (0..window.dim())
            .map(|i| {
                let (p, q) = fr[i % fr.len()];
                let t = Rat::new(p + 37 * attempt + 11 * i as i64, q);
                let t = t.fract();
                &window.lo()[i] + &(t * (&window.hi()[i] - &window.lo()[i]))
            })
            .collect();
        if window.contains_open(&v) && arr.is_regular(&v) {
            return v;
        }
    }
    unreachable!("no regular start point found")
}

/// All alcoves of an arrangement inside a window, indexed by key.
#[derive(Debug, Serialize)]
pub struct AlcoveComplex {
    arrangement: Arrangement,
    window: Window,
    cells: Vec<Cell>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

type ComplexCache = Mutex<HashMap<(Arrangement, Window), Arc<AlcoveComplex>>>;

fn cache() -> &'static ComplexCache {
    static CACHE: OnceLock<ComplexCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl AlcoveComplex {
    /// Enumerates cells by walking across walls from a regular start point.
    pub fn build(arr: &Arrangement, window: &Window) -> Arc<AlcoveComplex> {
        assert_eq!(arr.dim, window.dim());
        let cache_key = (arr.clone(), window.clone());
        if let Some(c) = cache().lock().unwrap().get(&cache_key) {
            return c.clone();
        }
        let start = arr.key(&generic_start(window, arr)).unwrap();
        let mut found: BTreeMap<Vec<i64>, Cell> = BTreeMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(key) = queue.pop_front() {
            if found.contains_key(&key) {
                continue;
            }
            let Some(cell) = make_cell(arr, window, &key) else {
                continue;
            };
            for &(j, level) in &cell.walls {
                let mut next = key.clone();
                if level == key[j] + 1 {
                    next[j] += 1;
                } else {
                    next[j] -= 1;
                }
                if !found.contains_key(&next) {
                    queue.push_back(next);
                }
            }
            found.insert(key, cell);
        }
        let cells: Vec<Cell> = found.into_values().collect();
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.key.clone(), i))
            .collect();
        let complex = Arc::new(AlcoveComplex {
            arrangement: arr.clone(),
            window: window.clone(),
            cells,
            index,
        });
        cache().lock().unwrap().insert(cache_key, complex.clone());
        complex
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of_key(&self, key: &[i64]) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Cell containing a regular point of the open window.
    pub fn locate(&self, v: &[Rat]) -> Result<usize> {
        if !self.window.contains_open(v) {
            return Err(Error::WindowExceeded);
        }
        let key = self.arrangement.key(v)?;
        self.index_of_key(&key).ok_or(Error::WindowExceeded)
    }
}

/// Alcoves of the admissible affine arrangement of `X` inside `W`.
pub fn alcoves(x: &WeightList, w: &Window) -> Result<Vec<Cell>> {
    x.require_spanning()?;
    if w.dim() != x.dim() {
        return Err(Error::Invalid("window dimension differs from weight dimension".into()));
    }
    Ok(AlcoveComplex::build(&Arrangement::of(x), w).cells().to_vec())
}

/// Regions an alcove adjacent to the origin may be required to lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlcoveRegion {
    Anywhere,
    Zonotope,
    Cone,
}

/// Window holding every alcove whose closure contains the origin.
fn origin_window(arr: &Arrangement) -> Window {
    let s = arr.dim;
    let mut hs = Vec::new();
    for n in &arr.normals {
        hs.push(Halfspace::from_int(n, Rat::one()));
        let neg: Vec<i64> = n.iter().map(|x| -x).collect();
        hs.push(Halfspace::from_int(&neg, Rat::one()));
    }
    let verts = vertex_enumeration(s, &hs);
    Window::bounding(&verts).expect("normals span")
}

/// Alcoves with the origin in their closure (keys in `{-1, 0}`).
pub fn alcoves_at_origin(x: &WeightList) -> Result<Vec<Cell>> {
    x.require_spanning()?;
    let arr = Arrangement::of(x);
    let complex = AlcoveComplex::build(&arr, &origin_window(&arr));
    Ok(complex
        .cells()
        .iter()
        .filter(|c| c.key.iter().all(|&k| k == 0 || k == -1))
        .cloned()
        .collect())
}

/// Deterministic alcove adjacent to 0: among admissible candidates, the one
/// whose vertex-average interior point is lexicographically largest.
pub fn base_alcove_in(x: &WeightList, region: AlcoveRegion) -> Result<Cell> {
    let z = super::zonotope(x);
    let candidates = alcoves_at_origin(x)?;
    candidates
        .into_iter()
        .filter(|c| match region {
            AlcoveRegion::Anywhere => true,
            AlcoveRegion::Zonotope => c.vertices.iter().all(|v| z.contains(v)),
            AlcoveRegion::Cone => super::in_cone(x, &c.interior),
        })
        .max_by(|a, b| a.interior.cmp(&b.interior))
        .ok_or(Error::NotPointed)
}

pub fn base_alcove(x: &WeightList, require_in_zonotope: bool) -> Result<Cell> {
    base_alcove_in(
        x,
        if require_in_zonotope {
            AlcoveRegion::Zonotope
        } else {
            AlcoveRegion::Anywhere
        },
    )
}

/// Interior integer representatives of the chambers of the central
/// arrangement `{⟨φ, a⟩ = 0 : a ∈ vectors}`, sorted.
pub fn central_chambers(dim: usize, vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let normals: Vec<Vec<i64>> = vectors
        .iter()
        .map(|a| crate::lattice::primitive_canonical(a.clone()))
        .collect();
    let arr = Arrangement::new(dim, normals);
    let m: i64 = arr
        .normals
        .iter()
        .map(|n| n.iter().map(|x| x.abs()).sum::<i64>())
        .max()
        .unwrap_or(1);
    let d = Rat::new(1, 2 * m);
    let w = Window::new(vec![-&d; dim], vec![d; dim]).unwrap();
    let complex = AlcoveComplex::build(&arr, &w);
    let mut out: Vec<Vec<i64>> = complex
        .cells()
        .iter()
        .map(|c| {
            let den = c
                .interior
                .iter()
                .fold(num_bigint::BigInt::from(1), |acc, x| {
                    num_integer::Integer::lcm(&acc, x.denom())
                });
            let den = Rat::from_bigint(den);
            let v: Vec<i64> = c
                .interior
                .iter()
                .map(|x| (x * &den).to_i64().expect("small representative"))
                .collect();
            crate::lattice::primitive_scaled(v)
        })
        .collect();
    out.sort();
    out
}
