//! Class-two groups built from the exterior square of `n` copies of the
//! natural `SL_2(q)`-module, and the perfect extensions by the binary
//! icosahedral group.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::Serialize;

use super::field::{Fe, Fq};
use super::linalg::{span_basis, Matrix, Vector};
use super::sl2::{find_binary_icosahedral, sl2, sl2_generators, Mat2, Sl2};
use crate::analysis::is_perfect;
use crate::error::{Error, Result};
use crate::group::{enumerate, Elem, Enumeration, FiniteGroup, GroupOps, Subset};
use crate::limits::Limits;

/// Characteristic restrictions for the construction. Characteristic 2 is
/// never accepted; characteristic 3 only when `allow_char3` is set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PerfectOptions {
    pub allow_char3: bool,
}

fn check_characteristic(f: &Fq, opts: PerfectOptions) -> Result<()> {
    match f.characteristic() {
        2 => Err(Error::BadCharacteristic(2)),
        3 if !opts.allow_char3 => Err(Error::BadCharacteristic(3)),
        _ => Ok(()),
    }
}

/// Index bookkeeping for `V = F^(2n)` and `W = Λ²V` with basis `e_i ∧ e_j`,
/// `i < j`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct WedgeSpace {
    pub n: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeSpace {
    pub fn new(n: usize) -> Self {
        let d = 2 * n;
        let pairs = (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
            .collect();
        WedgeSpace { n, pairs }
    }

    pub fn dim_v(&self) -> usize {
        2 * self.n
    }

    pub fn dim_w(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn wedge(&self, f: &Fq, a: &[Fe], b: &[Fe]) -> Vector {
        self.pairs
            .iter()
            .map(|&(i, j)| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])))
            .collect()
    }

    /// `θ` acting diagonally on the `n` copies.
    pub fn act_v(&self, f: &Fq, m: &Mat2, v: &[Fe]) -> Vector {
        let mut out = vec![0; v.len()];
        for k in 0..self.n {
            let (x, y) = (v[2 * k], v[2 * k + 1]);
            out[2 * k] = f.add(f.mul(m[0], x), f.mul(m[1], y));
            out[2 * k + 1] = f.add(f.mul(m[2], x), f.mul(m[3], y));
        }
        out
    }

    /// Matrix of the induced action of `θ` on `W`.
    pub fn act_w_matrix(&self, f: &Fq, m: &Mat2) -> Matrix {
        let d = self.dim_v();
        let basis = |i: usize| -> Vector {
            let mut e = vec![0; d];
            e[i] = 1;
            self.act_v(f, m, &e)
        };
        let cols: Vec<Vector> = self
            .pairs
            .iter()
            .map(|&(i, j)| self.wedge(f, &basis(i), &basis(j)))
            .collect();
        Matrix::from_columns(self.dim_w(), &cols)
    }
}

fn vadd(f: &Fq, a: &[Fe], b: &[Fe]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn vscale(f: &Fq, s: Fe, a: &[Fe]) -> Vector {
    a.iter().map(|&x| f.mul(s, x)).collect()
}

fn vneg(f: &Fq, a: &[Fe]) -> Vector {
    a.iter().map(|&x| f.neg(x)).collect()
}

/// Element of `E_n`, `G_n` or `H_n` as a flat coordinate list.
pub type Coords = Box<[Fe]>;

/// `E_n = V × W` with `(v1, w1)(v2, w2) = (v1 + v2, w1 + w2 + v1 ∧ v2)`.
/// Coordinates are `v` followed by `w`.
#[derive(Clone, Debug)]
pub struct En {
    pub field: Fq,
    pub space: WedgeSpace,
}

impl GroupOps for En {
    type Item = Coords;

    fn identity(&self) -> Coords {
        vec![0; self.space.dim_v() + self.space.dim_w()].into()
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        let f = &self.field;
        let d = self.space.dim_v();
        let wedge = self.space.wedge(f, &a[..d], &b[..d]);
        let mut out = vadd(f, a, b);
        for (o, w) in out[d..].iter_mut().zip(wedge) {
            *o = f.add(*o, w);
        }
        out.into()
    }

    fn inv(&self, a: &Coords) -> Coords {
        vneg(&self.field, a).into()
    }
}

/// Outcome of the law checks on `E_n`.
#[derive(Clone, Debug, Serialize)]
pub struct EnLawReport {
    pub order: u128,
    pub exhaustive: bool,
    pub pairs_checked: u64,
}

impl En {
    pub fn order(&self) -> u128 {
        (self.field.order() as u128).pow((self.space.dim_v() + self.space.dim_w()) as u32)
    }

    pub fn element(&self, v: &[Fe], w: &[Fe]) -> Coords {
        v.iter().chain(w).copied().collect()
    }

    /// `(β e_i, 0)` for every basis vector `e_i` of `V` and every `β` in a
    /// basis of the field over its prime field.
    pub fn generators(&self) -> Vec<Coords> {
        let d = self.space.dim_v();
        let mut gens = Vec::new();
        for i in 0..d {
            for b in self.field.prime_field_basis() {
                let mut v = vec![0; d];
                v[i] = b;
                gens.push(self.element(&v, &vec![0; self.space.dim_w()]));
            }
        }
        gens
    }

    pub fn pow(&self, a: &Coords, k: u64) -> Coords {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, a))
    }

    pub fn commutator(&self, a: &Coords, b: &Coords) -> Coords {
        let (ai, bi) = (self.inv(a), self.inv(b));
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Coords {
        let q = self.field.order() as u32;
        (0..self.space.dim_v() + self.space.dim_w())
            .map(|_| rng.random_range(0..q))
            .collect()
    }

    fn check_exponent(&self, a: &Coords) -> Result<()> {
        let p = self.field.characteristic();
        if !self.pow(a, p).iter().all(|&x| x == 0) {
            return Err(Error::check("exponent", format!("x^{p} != 1")));
        }
        Ok(())
    }

    fn check_pair(&self, a: &Coords, b: &Coords, c: &Coords) -> Result<()> {
        let f = &self.field;
        let d = self.space.dim_v();
        let comm = self.commutator(a, b);
        let wedge = self.space.wedge(f, &a[..d], &b[..d]);
        let expected = self.element(&vec![0; d], &vadd(f, &wedge, &wedge));
        if comm != expected {
            return Err(Error::check("commutator law", "[x,y] != (0, 2 v1∧v2)"));
        }
        if !self.commutator(&comm, c).iter().all(|&x| x == 0) {
            return Err(Error::check("class two", "[[x,y],z] != 1"));
        }
        Ok(())
    }

    /// Exponent `p`, the commutator law `[(v1,w1),(v2,w2)] = (0, 2 v1∧v2)`
    /// and centrality of commutators. Exhaustive over pairs when the order
    /// is at most `exhaustive_cap`, otherwise on `samples` seeded pairs.
    pub fn verify_laws(
        &self,
        exhaustive_cap: u128,
        samples: usize,
        seed: u64,
    ) -> Result<EnLawReport> {
        let order = self.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0u64;
        if order <= exhaustive_cap {
            let all = self.all_elements();
            for a in &all {
                self.check_exponent(a)?;
                for b in &all {
                    let c = self.random_element(&mut rng);
                    self.check_pair(a, b, &c)?;
                    checked += 1;
                }
            }
        } else {
            let gens = self.generators();
            for a in &gens {
                self.check_exponent(a)?;
                for b in &gens {
                    self.check_pair(a, b, &self.random_element(&mut rng))?;
                    checked += 1;
                }
            }
            for _ in 0..samples {
                let (a, b, c) = (
                    self.random_element(&mut rng),
                    self.random_element(&mut rng),
                    self.random_element(&mut rng),
                );
                self.check_exponent(&a)?;
                self.check_pair(&a, &b, &c)?;
                checked += 1;
            }
        }
        Ok(EnLawReport {
            order,
            exhaustive: order <= exhaustive_cap,
            pairs_checked: checked,
        })
    }

    fn all_elements(&self) -> Vec<Coords> {
        let q = self.field.order() as u32;
        let len = self.space.dim_v() + self.space.dim_w();
        let total = self.order() as usize;
        (0..total)
            .map(|mut k| {
                (0..len)
                    .map(|_| {
                        let c = (k % q as usize) as Fe;
                        k /= q as usize;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// The group as an enumerated [`FiniteGroup`].
    pub fn to_group(&self, limits: &Limits) -> Result<FiniteGroup> {
        let label = format!("E{}({})", self.space.n, self.field.order());
        if self.order() > limits.element_cap as u128 {
            return Err(Error::too_large(label, self.order(), limits.element_cap));
        }
        Ok(enumerate(self.clone(), &self.generators(), label, limits)?.0)
    }
}

/// Exhaustive law checks are run up to this order.
pub const EN_EXHAUSTIVE_CAP: u128 = 1331;

/// `E_n` over `f`, with its group laws verified.
pub fn build_en(n: usize, f: &Fq, opts: PerfectOptions) -> Result<En> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    check_characteristic(f, opts)?;
    let en = En {
        field: f.clone(),
        space: WedgeSpace::new(n),
    };
    en.verify_laws(EN_EXHAUSTIVE_CAP, 64, 0x5eed)?;
    Ok(en)
}

/// `W = Y ⊕ Z` with `Z` the fixed points of `SL_2(q)` and `Y` its
/// augmentation submodule, with coordinate maps along the decomposition.
#[derive(Clone, Debug)]
pub struct ModuleSplit {
    pub field: Fq,
    pub space: WedgeSpace,
    pub y: Vec<Vector>,
    pub z: Vec<Vector>,
    /// `dim Z × dim W`: coordinates in the `z` basis of the projection along `Y`.
    to_z: Matrix,
    /// `dim Y × dim W`.
    to_y: Matrix,
}

impl ModuleSplit {
    pub fn dim_y(&self) -> usize {
        self.y.len()
    }

    pub fn dim_z(&self) -> usize {
        self.z.len()
    }

    pub fn z_coords(&self, w: &[Fe]) -> Vector {
        self.to_z.apply(&self.field, w)
    }

    pub fn y_coords(&self, w: &[Fe]) -> Vector {
        self.to_y.apply(&self.field, w)
    }

    /// The `Z` coordinates of `e_i ∧ e_j` for each basis pair.
    fn wedge_columns(&self) -> Vec<Vector> {
        (0..self.space.dim_w())
            .map(|c| (0..self.dim_z()).map(|r| self.to_z.get(r, c)).collect())
            .collect()
    }
}

pub fn expected_split_dims(n: usize) -> (usize, usize) {
    (3 * n * (n - 1) / 2, n * (n + 1) / 2)
}

/// Splits `Λ²V_n` as an `SL_2(q)`-module and checks the result.
pub fn split_wn(n: usize, f: &Fq, opts: PerfectOptions) -> Result<ModuleSplit> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    check_characteristic(f, opts)?;
    let space = WedgeSpace::new(n);
    let dw = space.dim_w();
    let actions: Vec<Matrix> = sl2_generators(f)
        .iter()
        .map(|m| space.act_w_matrix(f, m))
        .collect();
    let shifted: Vec<Matrix> = actions.iter().map(|m| m.sub_identity(f)).collect();

    let mut stacked = Vec::new();
    let mut images = Vec::new();
    for m in &shifted {
        for r in 0..dw {
            stacked.push(m.row(r).to_vec());
        }
        for c in 0..dw {
            images.push((0..dw).map(|r| m.get(r, c)).collect::<Vector>());
        }
    }
    let z = Matrix::from_rows(&stacked).nullspace(f);
    let y = span_basis(f, dw, &images);

    let (ey, ez) = expected_split_dims(n);
    if y.len() != ey || z.len() != ez {
        return Err(Error::SplitFailed(format!(
            "dim Y = {}, dim Z = {} (expected {ey}, {ez})",
            y.len(),
            z.len()
        )));
    }
    let mut cols = y.clone();
    cols.extend(z.iter().cloned());
    let basis = Matrix::from_columns(dw, &cols);
    let Some(inv) = basis.inverse(f) else {
        return Err(Error::SplitFailed("Y and Z intersect nontrivially".into()));
    };
    for m in &actions {
        let moved: Vec<Vector> = y.iter().map(|v| m.apply(f, v)).collect();
        let mut both = y.clone();
        both.extend(moved);
        if !both.is_empty() && Matrix::from_rows(&both).rank(f) != y.len() {
            return Err(Error::SplitFailed("Y is not invariant".into()));
        }
    }
    let pick = |from: usize, to: usize| {
        let mut m = Matrix::zero(to - from, dw);
        for r in from..to {
            for c in 0..dw {
                m.set(r - from, c, inv.get(r, c));
            }
        }
        m
    };
    Ok(ModuleSplit {
        field: f.clone(),
        space,
        to_y: pick(0, ey),
        to_z: pick(ey, ey + ez),
        y,
        z,
    })
}

/// `G_n = E_n / Y_n` on `V × Z`:
/// `(v1, z1)(v2, z2) = (v1 + v2, z1 + z2 + π_Z(v1 ∧ v2))`.
#[derive(Clone, Debug)]
pub struct GnOps {
    pub field: Fq,
    pub space: WedgeSpace,
    dim_z: usize,
    wedge_z: Arc<Vec<Vector>>,
}

impl GnOps {
    pub fn new(split: &ModuleSplit) -> Self {
        GnOps {
            field: split.field.clone(),
            space: split.space.clone(),
            dim_z: split.dim_z(),
            wedge_z: Arc::new(split.wedge_columns()),
        }
    }

    pub fn len(&self) -> usize {
        self.space.dim_v() + self.dim_z
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn mul_into(&self, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
        let f = &self.field;
        let d = self.space.dim_v();
        for i in 0..self.len() {
            out[i] = f.add(a[i], b[i]);
        }
        for (k, &(i, j)) in self.space.pairs().iter().enumerate() {
            let c = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
            if c != 0 {
                for (t, &w) in self.wedge_z[k].iter().enumerate() {
                    out[d + t] = f.add(out[d + t], f.mul(c, w));
                }
            }
        }
    }

    /// `θ(v, z) = (θv, z)`.
    fn act(&self, m: &Mat2, a: &[Fe], out: &mut [Fe]) {
        let d = self.space.dim_v();
        let v = self.space.act_v(&self.field, m, &a[..d]);
        out[..d].copy_from_slice(&v);
        out[d..self.len()].copy_from_slice(&a[d..self.len()]);
    }
}

impl GroupOps for GnOps {
    type Item = Coords;

    fn identity(&self) -> Coords {
        vec![0; self.len()].into()
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        let mut out = vec![0; self.len()];
        self.mul_into(a, b, &mut out);
        out.into()
    }

    fn inv(&self, a: &Coords) -> Coords {
        vneg(&self.field, a).into()
    }
}

/// A finite group of matrices with its multiplication table.
#[derive(Clone, Debug)]
pub struct MatrixTop {
    pub mats: Vec<Mat2>,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl MatrixTop {
    /// The subgroup `h` of `SL_2(q)`, ids following `h` in id order.
    pub fn from_subgroup(s: &Sl2, h: &Subset) -> Result<(Self, FiniteGroup)> {
        let (grp, members) = s.group().subgroup_as_group(h, "top")?;
        let n = grp.order();
        let mut table = Vec::with_capacity(n * n);
        for a in grp.elements() {
            for b in grp.elements() {
                table.push(grp.mul(a, b).0);
            }
        }
        let inv = grp.elements().map(|a| grp.inv(a).0).collect();
        let mats = members.iter().map(|&m| s.matrix(m)).collect();
        Ok((MatrixTop { mats, table, inv }, grp))
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }
}

/// `G_n ⋊ T` for a matrix group `T`: `(g1, t1)(g2, t2) = (g1 · t1(g2), t1 t2)`.
/// Coordinates are those of `G_n` followed by the id of `t`.
#[derive(Clone, Debug)]
pub struct HnOps {
    pub gn: GnOps,
    pub top: Arc<MatrixTop>,
}

impl GroupOps for HnOps {
    type Item = Coords;

    fn identity(&self) -> Coords {
        vec![0; self.gn.len() + 1].into()
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        let k = self.gn.len();
        let (ta, tb) = (a[k] as usize, b[k] as usize);
        let mut moved = vec![0; k];
        self.gn.act(&self.top.mats[ta], &b[..k], &mut moved);
        let mut out = vec![0; k + 1];
        self.gn.mul_into(&a[..k], &moved, &mut out[..k]);
        out[k] = self.top.table[ta * self.top.order() + tb];
        out.into()
    }

    fn inv(&self, a: &Coords) -> Coords {
        let k = self.gn.len();
        let ti = self.top.inv[a[k] as usize];
        let gi = vneg(&self.gn.field, &a[..k]);
        let mut out = vec![0; k + 1];
        self.gn.act(&self.top.mats[ti as usize], &gi, &mut out[..k]);
        out[k] = ti;
        out.into()
    }
}

impl HnOps {
    fn lift_gn(&self, g: &[Fe]) -> Coords {
        g.iter().copied().chain([0]).collect()
    }

    fn lift_top(&self, t: u32) -> Coords {
        let mut c = vec![0; self.gn.len() + 1];
        c[self.gn.len()] = t;
        c.into()
    }
}

/// `G_n`, `H_n = G_n ⋊ B` and the data they are built from.
#[derive(Clone)]
pub struct PerfectGroupBundle {
    pub n: usize,
    pub field: Fq,
    pub split: ModuleSplit,
    pub en: En,
    pub gn: FiniteGroup,
    pub hn: FiniteGroup,
    pub sl2: Sl2,
    /// The binary icosahedral subgroup of `SL_2(q)`.
    pub b: Subset,
    gn_ops: GnOps,
    gn_enum: Arc<Enumeration<GnOps>>,
}

impl std::fmt::Debug for PerfectGroupBundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PerfectGroupBundle")
            .field("n", &self.n)
            .field("q", &self.field.order())
            .field("gn", &self.gn)
            .field("hn", &self.hn)
            .finish()
    }
}

/// `|H_n| = 120 · q^(2n + n(n+1)/2)`.
pub fn hn_order(n: usize, q: u64) -> u128 {
    120 * (q as u128).pow((2 * n + n * (n + 1) / 2) as u32)
}

fn gn_generators(ops: &GnOps) -> Vec<Coords> {
    let d = ops.space.dim_v();
    let mut gens = Vec::new();
    for i in 0..d {
        for b in ops.field.prime_field_basis() {
            let mut c = vec![0; ops.len()];
            c[i] = b;
            gens.push(c.into_boxed_slice());
        }
    }
    gens
}

/// Builds `G_n` and `H_n` over `f` and verifies: `Z_n` central in `H_n`, `B`
/// fixing `Z_n`, `H_n` perfect, and `|H_n| = 120 q^(2n + n(n+1)/2)`.
pub fn build_hn(
    n: usize,
    f: &Fq,
    opts: PerfectOptions,
    limits: &Limits,
) -> Result<PerfectGroupBundle> {
    let q = f.order();
    if q % 10 != 1 && q % 10 != 9 {
        return Err(Error::ConditionViolated(format!(
            "q = {q} is not congruent to ±1 mod 10"
        )));
    }
    let en = build_en(n, f, opts)?;
    let split = split_wn(n, f, opts)?;
    let expected = hn_order(n, q);
    let label = format!("H{n}({q})");
    if expected > limits.element_cap as u128 {
        return Err(Error::too_large(label, expected, limits.element_cap));
    }
    let s = sl2(f, limits)?;
    let b = find_binary_icosahedral(&s)?;
    let (top, bgrp) = MatrixTop::from_subgroup(&s, &b)?;

    for &t in bgrp.generators() {
        let m = split.space.act_w_matrix(f, &top.mats[t.index()]);
        if split.z.iter().any(|z| m.apply(f, z) != *z) {
            return Err(Error::check("trivial action on Z", "B moves a vector of Z"));
        }
    }

    let gn_ops = GnOps::new(&split);
    let gens = gn_generators(&gn_ops);
    let (gn, gn_enum) = enumerate(gn_ops.clone(), &gens, format!("G{n}({q})"), limits)?;

    let hops = HnOps {
        gn: gn_ops.clone(),
        top: Arc::new(top),
    };
    let mut hgens: Vec<Coords> = gens.iter().map(|g| hops.lift_gn(g)).collect();
    hgens.extend(bgrp.generators().iter().map(|t| hops.lift_top(t.0)));
    let (hn, henum) = enumerate(hops.clone(), &hgens, label, limits)?;
    if hn.order() as u128 != expected {
        return Err(Error::check(
            "order of H_n",
            format!("enumerated {} elements, expected {expected}", hn.order()),
        ));
    }

    let d = gn_ops.space.dim_v();
    for zi in 0..split.dim_z() {
        for beta in f.prime_field_basis() {
            let mut c = vec![0; gn_ops.len()];
            c[d + zi] = beta;
            let z = hops.lift_gn(&c);
            let zid = henum
                .id_of(&z)
                .ok_or_else(|| Error::check("Z in H_n", "element missing"))?;
            if let Some(&s) = hn
                .generators()
                .iter()
                .find(|&&s| hn.mul(zid, s) != hn.mul(s, zid))
            {
                return Err(Error::check(
                    "Z central",
                    format!("fails against generator {s}"),
                ));
            }
        }
    }
    if !is_perfect(&hn) {
        return Err(Error::check("H_n perfect", "derived subgroup is proper"));
    }
    Ok(PerfectGroupBundle {
        n,
        field: f.clone(),
        split,
        en,
        gn,
        hn,
        sl2: s,
        b,
        gn_ops,
        gn_enum,
    })
}

impl PerfectGroupBundle {
    pub fn coords(&self, e: Elem) -> &[Fe] {
        self.gn_enum.item(e)
    }

    /// The elements `(0, z)` of `G_n`.
    pub fn center_module(&self) -> Subset {
        let d = self.gn_ops.space.dim_v();
        Subset::from_predicate(self.gn.order(), |e| {
            self.coords(e)[..d].iter().all(|&x| x == 0)
        })
    }

    /// One-dimensional subspaces of `Z_n`, as subsets of `G_n`, ordered by
    /// their normalized spanning vector.
    pub fn lines(&self) -> Vec<Subset> {
        let f = &self.field;
        let q = f.order();
        let d = self.gn_ops.space.dim_v();
        let dz = self.split.dim_z();
        let mut out = Vec::new();
        for mut code in 1..q.pow(dz as u32) {
            let z: Vec<Fe> = (0..dz)
                .map(|_| {
                    let c = (code % q) as Fe;
                    code /= q;
                    c
                })
                .collect();
            if normalize_line(f, &z) != z {
                continue;
            }
            let members = f.elements().filter_map(|l| {
                let mut c = vec![0; d];
                c.extend(vscale(f, l, &z));
                self.gn_enum.id_of(&c.into_boxed_slice())
            });
            out.push(Subset::from_elems(self.gn.order(), members));
        }
        out
    }
}

/// Commutators of `L = G_n ⋊ SL_2(q)` that land in `Z_n`, and how many
/// lines of `Z_n` they meet.
#[derive(Clone, Debug, Serialize)]
pub struct CentralCommutatorReport {
    pub n: usize,
    pub q: u64,
    pub pairs: u64,
    pub central_values: usize,
    pub lines: u64,
    pub lines_free_of_commutators: u64,
}

/// Pairs of `L / Z_n` scanned at most.
pub const COMMUTATOR_PAIR_CAP: u128 = 100_000_000;

/// Since `Z_n` is central, commutators of `L` are determined by the images
/// in `L / Z_n = V_n ⋊ SL_2(q)`; every pair there is scanned.
pub fn central_commutators(
    n: usize,
    f: &Fq,
    opts: PerfectOptions,
    limits: &Limits,
) -> Result<CentralCommutatorReport> {
    let split = split_wn(n, f, opts)?;
    let q = f.order();
    let s = sl2(f, limits)?;
    let quotient_order = (q as u128).pow(2 * n as u32) * s.group().order() as u128;
    let pairs = quotient_order * quotient_order;
    if pairs > COMMUTATOR_PAIR_CAP {
        return Err(Error::too_large(
            format!("commutator scan of G{n}({q}) : SL(2,{q})"),
            pairs,
            COMMUTATOR_PAIR_CAP as usize,
        ));
    }
    let full = Subset::full(s.group().order());
    let (top, _) = MatrixTop::from_subgroup(&s, &full)?;
    let ops = HnOps {
        gn: GnOps::new(&split),
        top: Arc::new(top),
    };
    let d = 2 * n;
    let k = ops.gn.len();
    let reps: Vec<Coords> = {
        let vs = q.pow(d as u32);
        let mut out = Vec::new();
        for t in 0..s.group().order() as u32 {
            for mut code in 0..vs {
                let mut c = vec![0; k + 1];
                for slot in c.iter_mut().take(d) {
                    *slot = (code % q) as Fe;
                    code /= q;
                }
                c[k] = t;
                out.push(c.into_boxed_slice());
            }
        }
        out
    };
    let inv: Vec<Coords> = reps.iter().map(|x| ops.inv(x)).collect();
    let mut values: FxHashSet<Vec<Fe>> = FxHashSet::default();
    for (i, a) in reps.iter().enumerate() {
        for (j, b) in reps.iter().enumerate() {
            let c = ops.mul(&ops.mul(&inv[i], &inv[j]), &ops.mul(a, b));
            if c[..d].iter().all(|&x| x == 0) && c[k] == 0 {
                let z = c[d..k].to_vec();
                if z.iter().any(|&x| x != 0) {
                    values.insert(z);
                }
            }
        }
    }
    let dz = split.dim_z();
    let lines = (q.pow(dz as u32) - 1) / (q - 1);
    let mut hit: FxHashSet<Vec<Fe>> = FxHashSet::default();
    for z in &values {
        hit.insert(normalize_line(f, z));
    }
    Ok(CentralCommutatorReport {
        n,
        q,
        pairs: pairs as u64,
        central_values: values.len(),
        lines,
        lines_free_of_commutators: lines - hit.len() as u64,
    })
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
fn normalize_line(f: &Fq, z: &[Fe]) -> Vec<Fe> {
    let lead = *z.iter().find(|&&x| x != 0).unwrap();
    vscale(f, f.inv(lead).unwrap(), z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::nilpotency_class;
    use crate::constructions::field::gf;

    #[test]
    fn e1_over_f5() {
        let en = build_en(1, &gf(5, 1).unwrap(), PerfectOptions::default()).unwrap();
        assert_eq!(en.order(), 125);
        let g = en.to_group(&Limits::default()).unwrap();
        assert_eq!(g.order(), 125);
        assert_eq!(g.exponent(), 5);
        assert_eq!(nilpotency_class(&g), Some(2));
    }

    #[test]
    fn characteristic_guards() {
        let f3 = gf(3, 1).unwrap();
        assert_eq!(
            build_en(1, &f3, PerfectOptions::default()).unwrap_err(),
            Error::BadCharacteristic(3)
        );
        assert!(build_en(1, &f3, PerfectOptions { allow_char3: true }).is_ok());
        assert_eq!(
            build_en(1, &gf(2, 1).unwrap(), PerfectOptions { allow_char3: true }).unwrap_err(),
            Error::BadCharacteristic(2)
        );
    }

    #[test]
    fn split_dims_q11() {
        let f = gf(11, 1).unwrap();
        for n in 1..=3 {
            let s = split_wn(n, &f, PerfectOptions::default()).unwrap();
            assert_eq!((s.dim_y(), s.dim_z()), expected_split_dims(n));
        }
    }
}
