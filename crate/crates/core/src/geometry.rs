//! Finite projective planes: PG(2, q), the Fano plane over GF(8), and its
//! lift into the Teichmüller set of GR(4³).

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::finite_field::{
    elements_by_code, power_label, tuple_string, FieldContext, FieldElement,
};
use crate::galois_ring::{teichmuller_set, RingContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePlane {
    /// Point names (coordinates or tuples).
    pub points: Vec<String>,
    /// Each line as a sorted list of point indices.
    pub lines: Vec<Vec<usize>>,
    /// Optional algebraic label per point, e.g. `α^3`.
    pub labels: Option<Vec<String>>,
}

impl IncidencePlane {
    pub fn new(points: Vec<String>, lines: Vec<Vec<usize>>) -> Self {
        let lines = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        IncidencePlane {
            points,
            lines,
            labels: None,
        }
    }

    pub fn lines_through(&self, p: usize) -> usize {
        self.lines.iter().filter(|l| l.contains(&p)).count()
    }

    /// Text listing: one point per line, then one line of the plane per line.
    pub fn render(&self) -> String {
        let mut out = format!("{} points, {} lines\n", self.points.len(), self.lines.len());
        for (i, p) in self.points.iter().enumerate() {
            match &self.labels {
                Some(l) => out.push_str(&format!("P{i} {p} {}\n", l[i])),
                None => out.push_str(&format!("P{i} {p}\n")),
            }
        }
        for (i, l) in self.lines.iter().enumerate() {
            let pts: Vec<String> = l.iter().map(|p| format!("P{p}")).collect();
            out.push_str(&format!("L{i} {{{}}}\n", pts.join(", ")));
        }
        out
    }
}

/// Projective plane over GF(q): points and lines are the canonical
/// representatives (first nonzero coordinate 1) of GF(q)³ ∖ {0}.
pub fn projective_plane(q: u64) -> Result<IncidencePlane> {
    projective_plane_capped(q, 128)
}

pub fn projective_plane_capped(q: u64, cap: u64) -> Result<IncidencePlane> {
    let (p, m) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > cap {
        return Err(Error::DimensionTooLarge { dim: q, cap });
    }
    let ctx = FieldContext::new(p as u32, m as usize)?;
    let els = elements_by_code(&ctx);
    let one = FieldElement::one(&ctx);
    let zero = FieldElement::zero(&ctx);
    let mut reps: Vec<[FieldElement; 3]> = Vec::new();
    for x in &els {
        for y in &els {
            reps.push([one.clone(), x.clone(), y.clone()]);
        }
    }
    for x in &els {
        reps.push([zero.clone(), one.clone(), x.clone()]);
    }
    reps.push([zero.clone(), zero.clone(), one.clone()]);
    let points: Vec<String> = reps
        .iter()
        .map(|r| tuple_string(&r.iter().map(FieldElement::code).collect::<Vec<_>>()))
        .collect();
    let lines = reps
        .iter()
        .map(|form| {
            (0..reps.len())
                .filter(|&i| {
                    let v = &reps[i];
                    (&(&(&form[0] * &v[0]) + &(&form[1] * &v[1])) + &(&form[2] * &v[2])).is_zero()
                })
                .collect()
        })
        .collect();
    Ok(IncidencePlane::new(points, lines))
}

/// Fano plane on GF(8)*: lines are the triples of distinct nonzero elements
/// summing to zero. Points are ordered `1, α, …, α^6`.
pub fn fano_from_gf8() -> IncidencePlane {
    let ctx = FieldContext::new(2, 3).expect("GF(8)");
    let points: Vec<FieldElement> = (0..7).map(|k| FieldElement::alpha_pow(&ctx, k)).collect();
    fano_on(&ctx, &points)
}

fn fano_on(ctx: &Arc<FieldContext>, points: &[FieldElement]) -> IncidencePlane {
    let mut lines = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if (&(&points[i] + &points[j]) + &points[k]).is_zero() {
                    lines.push(vec![i, j, k]);
                }
            }
        }
    }
    let names = points
        .iter()
        .map(|e| {
            let mut t = e.coeffs();
            t.resize(ctx.degree(), 0);
            t.reverse();
            tuple_string(&t)
        })
        .collect();
    let mut plane = IncidencePlane::new(names, lines);
    plane.labels = Some(points.iter().map(|e| power_label("α", e.log())).collect());
    plane
}

/// One row of the mod-2 projection `T_3* → GF(8)*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftRow {
    /// `k` in `ξ^k`.
    pub power: u32,
    pub polynomial: String,
    /// Z_4 coefficients, highest degree first.
    pub z4_tuple: Vec<u32>,
    /// Reduced coefficients, highest degree first.
    pub z2_tuple: Vec<u32>,
    /// `k′` with the reduction equal to `α^{k′}`.
    pub image_power: u32,
}

#[derive(Clone, Debug)]
pub struct LiftedFano {
    pub table: Vec<LiftRow>,
    /// Lines are preimages of Fano lines; point `k` is `ξ^k`.
    pub plane: IncidencePlane,
    /// `image[k]` is the GF(8)* point (index into [`fano_from_gf8`]) of `ξ^k`.
    pub image: Vec<usize>,
}

/// The lifted Fano plane in `T_3* = {ξ^0, …, ξ^6}`.
pub fn lifted_fano(ctx: &Arc<RingContext>) -> Result<LiftedFano> {
    if ctx.degree() != 3 {
        return Err(Error::InvalidModulus(format!(
            "lifted Fano plane needs GR(4^3), got degree {}",
            ctx.degree()
        )));
    }
    let h2: Vec<u32> = ctx.basic_primitive().iter().map(|c| c % 2).collect();
    let field = FieldContext::with_modulus(2, h2)?;
    let units = &teichmuller_set(ctx)[1..];
    let mut table = Vec::with_capacity(units.len());
    let mut image = Vec::with_capacity(units.len());
    for (k, t) in units.iter().enumerate() {
        let reduced = FieldElement::from_coeffs(&field, &t.reduce_mod2());
        let log = reduced
            .log()
            .ok_or_else(|| Error::InvalidModulus("unit reduced to zero".into()))?;
        let mut z4 = t.coeffs();
        z4.reverse();
        let z2 = z4.iter().map(|c| c % 2).collect();
        table.push(LiftRow {
            power: k as u32,
            polynomial: t.to_string(),
            z4_tuple: z4,
            z2_tuple: z2,
            image_power: log,
        });
        image.push(log as usize);
    }
    let seen: HashSet<usize> = image.iter().copied().collect();
    if seen.len() != image.len() {
        return Err(Error::InvalidModulus(
            "mod-2 reduction is not injective".into(),
        ));
    }
    let targets: Vec<FieldElement> = (0..7).map(|k| FieldElement::alpha_pow(&field, k)).collect();
    let fano = fano_on(&field, &targets);
    let mut preimage = vec![0; image.len()];
    for (k, &i) in image.iter().enumerate() {
        preimage[i] = k;
    }
    let lines = fano
        .lines
        .iter()
        .map(|l| l.iter().map(|&i| preimage[i]).collect())
        .collect();
    let mut plane = IncidencePlane::new(
        table.iter().map(|r| tuple_string(&r.z4_tuple)).collect(),
        lines,
    );
    plane.labels = Some(
        (0..units.len())
            .map(|k| power_label("ξ", Some(k as u32)))
            .collect(),
    );
    Ok(LiftedFano {
        table,
        plane,
        image,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneReport {
    pub points: usize,
    pub lines: usize,
    /// `n` with `n + 1` points on every line, when line sizes agree.
    pub order: Option<usize>,
    pub two_points_one_line: bool,
    pub two_lines_one_point: bool,
    pub four_points_general: bool,
    /// Points, lines and lines per point all match `n² + n + 1` and `n + 1`.
    pub counts_match: bool,
    pub failure: Option<String>,
    pub passed: bool,
}

/// Exhaustive check of the projective-plane axioms.
pub fn verify_plane_axioms(plane: &IncidencePlane) -> PlaneReport {
    let np = plane.points.len();
    let sets: Vec<HashSet<usize>> = plane
        .lines
        .iter()
        .map(|l| l.iter().copied().collect())
        .collect();
    let mut failure = None;
    let mut two_points_one_line = true;
    'points: for a in 0..np {
        for b in a + 1..np {
            let c = sets
                .iter()
                .filter(|l| l.contains(&a) && l.contains(&b))
                .count();
            if c != 1 {
                two_points_one_line = false;
                failure = Some(if c == 0 {
                    format!("two points on no common line: P{a}, P{b}")
                } else {
                    format!("points P{a}, P{b} share {c} lines")
                });
                break 'points;
            }
        }
    }
    let mut two_lines_one_point = true;
    'lines: for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let c = sets[i].intersection(&sets[j]).count();
            if c != 1 {
                two_lines_one_point = false;
                failure.get_or_insert(format!("lines L{i}, L{j} meet in {c} points"));
                break 'lines;
            }
        }
    }
    let four_points_general = has_quadrangle(np, &sets);
    if !four_points_general {
        failure.get_or_insert("no four points with no three collinear".into());
    }
    let order = plane
        .lines
        .first()
        .map(|l| l.len())
        .filter(|&k| k >= 2 && plane.lines.iter().all(|l| l.len() == k))
        .map(|k| k - 1);
    let counts_match = order.is_some_and(|n| {
        let total = n * n + n + 1;
        np == total
            && plane.lines.len() == total
            && (0..np).all(|p| plane.lines_through(p) == n + 1)
    });
    if !counts_match {
        failure.get_or_insert("counts do not match n² + n + 1".into());
    }
    PlaneReport {
        points: np,
        lines: plane.lines.len(),
        order,
        two_points_one_line,
        two_lines_one_point,
        four_points_general,
        counts_match,
        passed: failure.is_none(),
        failure,
    }
}

fn has_quadrangle(np: usize, lines: &[HashSet<usize>]) -> bool {
    let collinear = |a: usize, b: usize, c: usize| {
        lines
            .iter()
            .any(|l| l.contains(&a) && l.contains(&b) && l.contains(&c))
    };
    for a in 0..np {
        for b in a + 1..np {
            for c in b + 1..np {
                if collinear(a, b, c) {
                    continue;
                }
                for d in c + 1..np {
                    if !collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Whether `map` (point of `a` ↦ point of `b`) sends lines onto lines.
pub fn is_isomorphism(a: &IncidencePlane, b: &IncidencePlane, map: &[usize]) -> bool {
    if map.len() != a.points.len()
        || a.points.len() != b.points.len()
        || a.lines.len() != b.lines.len()
    {
        return false;
    }
    let targets: HashSet<Vec<usize>> = b.lines.iter().cloned().collect();
    let distinct: HashSet<usize> = map.iter().copied().collect();
    distinct.len() == map.len()
        && a.lines.iter().all(|l| {
            let mut img: Vec<usize> = l.iter().map(|&p| map[p]).collect();
            img.sort_unstable();
            targets.contains(&img)
        })
}

/// Backtracking search for an incidence-preserving point bijection.
pub fn find_isomorphism(a: &IncidencePlane, b: &IncidencePlane) -> Option<Vec<usize>> {
    let n = a.points.len();
    if n != b.points.len() || a.lines.len() != b.lines.len() {
        return None;
    }
    let targets: HashSet<Vec<usize>> = b.lines.iter().cloned().collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        a: &IncidencePlane,
        targets: &HashSet<Vec<usize>>,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = map.len();
        if k == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            map[k] = cand;
            // every line whose points are all assigned must map to a line
            let ok = a.lines.iter().filter(|l| l.contains(&k)).all(|l| {
                if l.iter().any(|&p| p > k) {
                    return true;
                }
                let mut img: Vec<usize> = l.iter().map(|&p| map[p]).collect();
                img.sort_unstable();
                targets.contains(&img)
            });
            if ok {
                used[cand] = true;
                if extend(k + 1, a, targets, map, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        map[k] = usize::MAX;
        false
    }
    extend(0, a, &targets, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_plane_counts() {
        for (q, n) in [(2, 7), (3, 13), (4, 21)] {
            let p = projective_plane(q).unwrap();
            assert_eq!(p.points.len(), n);
            let r = verify_plane_axioms(&p);
            assert!(r.passed, "{r:?}");
            assert_eq!(r.order, Some(q as usize));
        }
        assert!(matches!(projective_plane(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn missing_line_is_reported() {
        let mut p = projective_plane(2).unwrap();
        p.lines.pop();
        let r = verify_plane_axioms(&p);
        assert!(!r.two_points_one_line);
        assert!(r
            .failure
            .unwrap()
            .starts_with("two points on no common line"));
    }

    #[test]
    fn gf8_fano_lines() {
        let f = fano_from_gf8();
        assert_eq!(f.lines.len(), 7);
        // {1, α, α^3}
        assert!(f.lines.contains(&vec![0, 1, 3]));
        assert!((0..7).all(|p| f.lines_through(p) == 3));
        assert!(find_isomorphism(&f, &projective_plane(2).unwrap()).is_some());
    }

    #[test]
    fn lifted_plane() {
        let ctx = RingContext::new(3).unwrap();
        let lifted = lifted_fano(&ctx).unwrap();
        assert_eq!(lifted.table[3].z4_tuple, [2, 3, 1]);
        assert_eq!(lifted.table[3].z2_tuple, [0, 1, 1]);
        assert!(verify_plane_axioms(&lifted.plane).passed);
        assert!(lifted_fano(&RingContext::new(2).unwrap()).is_err());
    }

    #[test]
    fn non_isomorphic_sizes() {
        let a = projective_plane(2).unwrap();
        let b = projective_plane(3).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
        assert!(!is_isomorphism(&a, &a, &[0, 0, 1, 2, 3, 4, 5]));
        assert!(is_isomorphism(&a, &a, &(0..7).collect::<Vec<_>>()));
    }
}
