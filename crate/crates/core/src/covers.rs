//! Double-cover invariant calculus on plain integers.
//!
//! Everything here is numerology: smooth-cover formulas for K² and χ, the
//! canonical-resolution corrections coming from infinitely-near multiplicity
//! trees on the branch curve, the minimal-model adjustment, the node-count
//! formula, p_g/q bookkeeping, and the composed-bicanonical equality test.
//! Intersection numbers and cohomology dimensions are caller-supplied; the
//! module never touches an actual surface.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kodaira dimension tag: -1 encodes -infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Kodaira {
    MinusInfinity,
    Zero,
    One,
    Two,
}

impl TryFrom<i8> for Kodaira {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            -1 => Ok(Kodaira::MinusInfinity),
            0 => Ok(Kodaira::Zero),
            1 => Ok(Kodaira::One),
            2 => Ok(Kodaira::Two),
            other => Err(format!("kodaira dimension out of range: {other}")),
        }
    }
}

impl From<Kodaira> for i8 {
    fn from(k: Kodaira) -> i8 {
        match k {
            Kodaira::MinusInfinity => -1,
            Kodaira::Zero => 0,
            Kodaira::One => 1,
            Kodaira::Two => 2,
        }
    }
}

/// Numeric invariants of a surface. When both pg and q are present the
/// Noether relation chi = 1 - q + pg must hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    #[serde(rename = "K2")]
    pub k2: i64,
    pub chi: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kod: Option<Kodaira>,
}

impl SurfaceInvariants {
    pub fn new(k2: i64, chi: i64) -> Self {
        SurfaceInvariants { k2, chi, pg: None, q: None, kod: None }
    }

    pub fn with_pg_q(mut self, pg: i64, q: i64) -> Result<Self> {
        self.pg = Some(pg);
        self.q = Some(q);
        self.check()?;
        Ok(self)
    }

    /// chi = 1 - q + pg whenever both refinements are present.
    pub fn check(&self) -> Result<()> {
        if let (Some(pg), Some(q)) = (self.pg, self.q) {
            if self.chi != 1 - q + pg {
                return Err(Error::inconsistent(format!(
                    "chi = {} but 1 - q + pg = {}",
                    self.chi,
                    1 - q + pg
                )));
            }
        }
        Ok(())
    }
}

/// One point of the branch locus with its infinitely-near descendants.
/// `multiplicity` is the multiplicity of the strict transform of the branch
/// curve at this point; children live on the exceptional curve of its
/// blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityTree {
    pub multiplicity: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SingularityTree>,
}

impl SingularityTree {
    pub fn point(multiplicity: i64) -> Self {
        SingularityTree { multiplicity, children: Vec::new() }
    }

    /// A point of multiplicity n with one infinitely-near point also of
    /// multiplicity n.
    pub fn n_n_point(n: i64) -> Self {
        SingularityTree { multiplicity: n, children: vec![SingularityTree::point(n)] }
    }
}

/// Branch-curve numerics for a double cover. B2/KB may describe the raw
/// branch B or the resolved branch as the caller configures; parity is
/// forced by the existence of the half line bundle L with 2L = B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchData {
    #[serde(rename = "B2")]
    pub b2: i64,
    #[serde(rename = "KB")]
    pub kb: i64,
    /// Count of disjoint nodal (-2)-curves split off the branch.
    pub nodal_components: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trees: Vec<SingularityTree>,
    #[serde(rename = "h0_KL", default, skip_serializing_if = "Option::is_none")]
    pub h0_kl: Option<i64>,
    #[serde(rename = "h0_2KL", default, skip_serializing_if = "Option::is_none")]
    pub h0_2kl: Option<i64>,
}

impl BranchData {
    /// Rejects B2 not divisible by 4 and odd K.B: both are forced by 2L = B.
    pub fn check(&self) -> Result<()> {
        if self.b2.rem_euclid(4) != 0 {
            return Err(Error::invalid(format!("B^2 = {} is not 0 mod 4", self.b2)));
        }
        if self.kb.rem_euclid(2) != 0 {
            return Err(Error::invalid(format!("K.B = {} is odd", self.kb)));
        }
        if self.nodal_components < 0 {
            return Err(Error::invalid("negative nodal component count"));
        }
        if let Some(h) = self.h0_kl {
            if h < 0 {
                return Err(Error::invalid("negative h0(K+L)"));
            }
        }
        if let Some(h) = self.h0_2kl {
            if h < 0 {
                return Err(Error::invalid("negative h0(2K+L)"));
            }
        }
        Ok(())
    }
}

/// Output of the assembled cover chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    #[serde(rename = "KV2")]
    pub kv2: i64,
    #[serde(rename = "KS2")]
    pub ks2: i64,
    #[serde(rename = "chiS")]
    pub chi_s: i64,
    pub t_check: i64,
    pub r_list: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bicanonical_composed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
}

/// Canonical resolution of one singular point of the branch curve.
///
/// Walking the tree root-down, the multiplicity that matters at each node is
/// the total branch multiplicity: the strict transform's multiplicity, plus
/// one if the parent's total was odd, because then the exceptional curve of
/// the parent blow-up joins the branch and passes through the point.
/// Each node with total m and k = floor(m/2) contributes an exceptional
/// number r = 2k, a chi correction of -k(k-1)/2 and a K^2 correction of
/// -2(k-1)^2.
pub fn canonical_resolution(tree: &SingularityTree) -> Result<(Vec<i64>, i64, i64)> {
    let mut r_list = Vec::new();
    let mut delta_chi = 0i64;
    let mut delta_k2 = 0i64;
    walk(tree, false, &mut r_list, &mut delta_chi, &mut delta_k2)?;
    return Ok((r_list, delta_chi, delta_k2));

    fn walk(
        node: &SingularityTree,
        parent_odd: bool,
        r_list: &mut Vec<i64>,
        delta_chi: &mut i64,
        delta_k2: &mut i64,
    ) -> Result<()> {
        if node.multiplicity < 2 {
            return Err(Error::invalid(format!(
                "branch multiplicity {} < 2",
                node.multiplicity
            )));
        }
        let total = node.multiplicity + if parent_odd { 1 } else { 0 };
        let k = total / 2;
        r_list.push(2 * k);
        *delta_chi -= k * (k - 1) / 2;
        *delta_k2 -= 2 * (k - 1) * (k - 1);
        for child in &node.children {
            walk(child, total % 2 == 1, r_list, delta_chi, delta_k2)?;
        }
        Ok(())
    }
}

/// Smooth-cover formulas: for a double cover branched along a smooth curve
/// with half bundle L, K_V^2 = 2(K_W + L)^2 and chi(O_V) = 2 chi(O_W) +
/// L(K_W + L)/2.
pub fn smooth_cover(base: &SurfaceInvariants, l2: i64, kl: i64) -> Result<(i64, i64)> {
    base.check()?;
    let kv2 = 2 * (base.k2 + 2 * kl + l2);
    let half = kl + l2;
    if half.rem_euclid(2) != 0 {
        return Err(Error::invalid(format!(
            "L(K+L) = {half} is odd: chi of the cover would not be an integer"
        )));
    }
    let chi_v = 2 * base.chi + half / 2;
    Ok((kv2, chi_v))
}

/// Contracting `contracted` exceptional (-1)-curves raises K^2 one each.
pub fn minimal_model_adjust(kv2: i64, contracted: i64) -> Result<i64> {
    if contracted < 0 {
        return Err(Error::invalid("negative contraction count"));
    }
    Ok(kv2 + contracted)
}

/// Node-count formula for the quotient surface:
/// t = K_S^2 + 6 chi(O_W) - 2 chi(O_S) - 2 h0(2K_W + L).
pub fn nodes_count(ks2: i64, chi_w: i64, chi_s: i64, h0_2kl: i64) -> Result<i64> {
    if h0_2kl < 0 {
        return Err(Error::invalid("negative h0(2K+L)"));
    }
    let t = ks2 + 6 * chi_w - 2 * chi_s - 2 * h0_2kl;
    if t < 0 {
        return Err(Error::inconsistent(format!("node count t = {t} is negative")));
    }
    Ok(t)
}

/// The bicanonical map factors through the involution exactly when
/// chi(O_P) - chi(O_S) = K_P(K_P + delta) + sum (r_i - 2)/2.
pub fn bicanonical_test(
    chi_p: i64,
    chi_s: i64,
    kp2: i64,
    kp_delta: i64,
    r_list: &[i64],
) -> Result<bool> {
    let mut half_sum = 0i64;
    for &r in r_list {
        if r < 2 || r % 2 != 0 {
            return Err(Error::invalid(format!("exceptional number r = {r} not even and >= 2")));
        }
        half_sum += (r - 2) / 2;
    }
    Ok(chi_p - chi_s == kp2 + kp_delta + half_sum)
}

/// p_g and q of the cover from the base and the L-twisted cohomology.
pub fn pg_q(base_w: &SurfaceInvariants, h0_kl: i64, h1_kl: i64) -> Result<(i64, i64)> {
    if h0_kl < 0 || h1_kl < 0 {
        return Err(Error::invalid("negative cohomology dimension"));
    }
    let (pg_w, q_w) = match (base_w.pg, base_w.q) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(Error::invalid("base surface needs pg and q for the cover's pg/q")),
    };
    Ok((pg_w + h0_kl, q_w + h1_kl))
}

/// JSON configuration for a full cover chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConfig {
    pub base: SurfaceInvariants,
    pub branch: BranchData,
    pub contracted: i64,
    /// h1(K_W + L), needed only to report q of the cover.
    #[serde(rename = "h1_KL", default, skip_serializing_if = "Option::is_none")]
    pub h1_kl: Option<i64>,
}

/// The assembled chain: resolution corrections, smooth-cover formulas,
/// minimal-model adjustment, node-count cross-check, and pg/q when the
/// inputs carry enough data.
pub fn run_chain(cfg: &CoverConfig) -> Result<CoverResult> {
    cfg.base.check()?;
    cfg.branch.check()?;
    let mut r_list = Vec::new();
    let mut delta_chi = 0i64;
    let mut delta_k2 = 0i64;
    for tree in &cfg.branch.trees {
        let (r, dc, dk) = canonical_resolution(tree)?;
        r_list.extend(r);
        delta_chi += dc;
        delta_k2 += dk;
    }
    // 2L = B gives L^2 = B^2/4 and KL = KB/2
    let l2 = cfg.branch.b2 / 4;
    let kl = cfg.branch.kb / 2;
    let (kv2_smooth, chi_smooth) = smooth_cover(&cfg.base, l2, kl)?;
    let kv2 = kv2_smooth + delta_k2;
    let chi_s = chi_smooth + delta_chi;
    let ks2 = minimal_model_adjust(kv2, cfg.contracted)?;
    let h0_2kl = cfg
        .branch
        .h0_2kl
        .ok_or_else(|| Error::invalid("h0(2K+L) required for the node count"))?;
    let t_check = nodes_count(ks2, cfg.base.chi, chi_s, h0_2kl)?;
    let (pg, q) = match cfg.branch.h0_kl {
        Some(h0) => {
            let (pg, q) = pg_q(&cfg.base, h0, cfg.h1_kl.unwrap_or(0))?;
            // the result must satisfy Noether's relation for the cover
            SurfaceInvariants { k2: ks2, chi: chi_s, pg: Some(pg), q: Some(q), kod: None }
                .check()?;
            (Some(pg), Some(q))
        }
        None => (None, None),
    };
    Ok(CoverResult {
        kv2,
        ks2,
        chi_s,
        t_check,
        r_list,
        bicanonical_composed: None,
        pg,
        q,
    })
}
