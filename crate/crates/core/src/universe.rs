//! Curated catalogs of indecomposable representations ("universes"), with
//! precomputed Hom and Ext tables.
//!
//! Three families are supported:
//! - representation-finite (Dynkin) quivers, enumerated completely by
//!   knitting the inverse AR translate out of the projectives and checked
//!   against the positive-root count of the underlying diagram;
//! - the Kronecker quiver, truncated to preprojectives and preinjectives up
//!   to an index bound plus all regular modules up to a length bound;
//! - cyclic-orientation tubes of any rank, truncated at a length bound.
//!
//! Members carry stable labels and a class tag, and the catalog order is
//! deterministic, so serialized universes are byte-reproducible.

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Mat};
use crate::quiverrep::{
    ext_dim, hom_dim, injective, is_isomorphic, projective, tau, tau_inverse, Arrow,
    Quiver, Representation,
};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Point of the projective line over F_p, indexing a Kronecker tube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegLambda {
    Finite(u64),
    Infinity,
}

impl fmt::Display for RegLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegLambda::Finite(x) => write!(f, "{x}"),
            RegLambda::Infinity => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for RegLambda {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl std::str::FromStr for RegLambda {
    type Err = Error;

    fn from_str(s: &str) -> Result<RegLambda> {
        if s == "inf" {
            return Ok(RegLambda::Infinity);
        }
        s.parse::<u64>()
            .map(RegLambda::Finite)
            .map_err(|_| Error::invalid(format!("bad tube point {s:?}; want a residue or \"inf\"")))
    }
}

impl<'de> serde::Deserialize<'de> for RegLambda {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Structural role of a catalog member inside its universe.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MemberClass {
    /// Dynkin indecomposable, determined by its dimension vector.
    Root,
    /// Kronecker preprojective, 0 = the simple at the sink.
    Preprojective(usize),
    /// Kronecker regular of quasi-length `len` in the tube at `lambda`.
    Regular { lambda: RegLambda, len: usize },
    /// Kronecker preinjective, 0 = the simple at the source.
    Preinjective(usize),
    /// Tube uniserial with the given socle (1-based) and length.
    TubeChain { socle: usize, len: usize },
}

impl MemberClass {
    pub fn label(&self, dims: &[usize]) -> String {
        match self {
            MemberClass::Root => {
                let joined: Vec<String> = dims.iter().map(usize::to_string).collect();
                format!("root[{}]", joined.join(","))
            }
            MemberClass::Preprojective(n) => format!("pre({n})"),
            MemberClass::Regular { lambda, len } => format!("reg({lambda},{len})"),
            MemberClass::Preinjective(n) => format!("inj({n})"),
            MemberClass::TubeChain { socle, len } => format!("s({socle},{len})"),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Member {
    pub label: String,
    pub class: MemberClass,
    pub rep: Representation,
}

/// Which family the universe was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum UniverseKind {
    Dynkin,
    Kronecker { bound: usize },
    Tube { rank: usize, bound: usize },
}

/// A finite catalog of indecomposables with Hom/Ext tables.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct Universe {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    kind: UniverseKind,
    members: Vec<Member>,
    by_label: BTreeMap<String, usize>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
}

/// Linear A_n quiver 1 -> 2 -> ... -> n.
pub fn linear_quiver(n: usize) -> Arc<Quiver> {
    let vertices = (1..=n).map(|i| i.to_string()).collect();
    let arrows = (1..n)
        .map(|i| Arrow { name: format!("a{i}"), src: i - 1, tgt: i })
        .collect();
    Arc::new(Quiver::new(vertices, arrows).expect("valid linear quiver"))
}

/// D_4 with three sources feeding the central vertex 4.
pub fn d4_quiver() -> Arc<Quiver> {
    let vertices = (1..=4).map(|i| i.to_string()).collect();
    let arrows = (0..3)
        .map(|i| Arrow { name: format!("a{}", i + 1), src: i, tgt: 3 })
        .collect();
    Arc::new(Quiver::new(vertices, arrows).expect("valid D4 quiver"))
}

/// Two parallel arrows 0 -> 1.
pub fn kronecker_quiver() -> Arc<Quiver> {
    Arc::new(
        Quiver::new(
            vec!["0".into(), "1".into()],
            vec![
                Arrow { name: "a".into(), src: 0, tgt: 1 },
                Arrow { name: "b".into(), src: 0, tgt: 1 },
            ],
        )
        .expect("valid Kronecker quiver"),
    )
}

/// Cyclic quiver with `rank` vertices and arrows j -> j-1 (mod rank).
pub fn tube_quiver(rank: usize) -> Result<Arc<Quiver>> {
    if rank == 0 {
        return Err(Error::invalid("tube rank must be positive"));
    }
    let vertices = (1..=rank).map(|i| i.to_string()).collect();
    let arrows = (0..rank)
        .map(|j| Arrow {
            name: format!("a{}", j + 1),
            src: j,
            tgt: (j + rank - 1) % rank,
        })
        .collect();
    Ok(Arc::new(Quiver::new(vertices, arrows)?))
}

/// Number of positive roots when the underlying graph is a simply laced
/// Dynkin diagram; an error otherwise (including multiple edges and cycles).
fn positive_root_count(q: &Quiver) -> Result<usize> {
    let n = q.vertex_count();
    if n == 0 {
        return Err(Error::invalid("empty quiver"));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen_edges: Vec<(usize, usize)> = Vec::new();
    for a in q.arrows() {
        let e = (a.src.min(a.tgt), a.src.max(a.tgt));
        if e.0 == e.1 {
            return Err(Error::invalid("loops are not Dynkin"));
        }
        if seen_edges.contains(&e) {
            return Err(Error::invalid("multiple edges are not Dynkin"));
        }
        seen_edges.push(e);
        adj[a.src].push(a.tgt);
        adj[a.tgt].push(a.src);
    }
    if seen_edges.len() != n - 1 {
        return Err(Error::invalid("underlying graph is not a tree"));
    }
    // Connectivity.
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        if !visited[v] {
            visited[v] = true;
            stack.extend(adj[v].iter().copied());
        }
    }
    if !visited.iter().all(|&b| b) {
        return Err(Error::invalid("underlying graph is not connected"));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.len() {
        0 => Ok(n * (n + 1) / 2),
        1 => {
            let b = branch[0];
            if adj[b].len() != 3 {
                return Err(Error::invalid("vertex of degree > 3 is not Dynkin"));
            }
            let mut arms: Vec<usize> = adj[b]
                .iter()
                .map(|&start| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (b, start);
                    loop {
                        let next: Vec<usize> =
                            adj[cur].iter().copied().filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [] => break,
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => unreachable!("second branch vertex excluded above"),
                        }
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(n * (n - 1)),
                [1, 2, 2] => Ok(36),
                [1, 2, 3] => Ok(63),
                [1, 2, 4] => Ok(120),
                _ => Err(Error::invalid("branched tree is not Dynkin")),
            }
        }
        _ => Err(Error::invalid("two branch vertices are not Dynkin")),
    }
}

impl Universe {
    /// Complete catalog over a representation-finite quiver, by knitting the
    /// inverse AR translate from the projectives. The member count is checked
    /// against the positive-root count of the diagram.
    pub fn dynkin(quiver: Arc<Quiver>, field: FieldSpec) -> Result<Universe> {
        if !quiver.is_acyclic() {
            return Err(Error::invalid("Dynkin universe requires an acyclic quiver"));
        }
        let expected = positive_root_count(&quiver)?;
        let mut reps: Vec<Representation> = (0..quiver.vertex_count())
            .map(|v| projective(&quiver, field, v))
            .collect();
        let mut frontier: Vec<Representation> = reps.clone();
        while let Some(m) = frontier.pop() {
            if let Some(next) = tau_inverse(&m)? {
                if !next.is_zero()
                    && !reps
                        .iter()
                        .any(|r| r.dims() == next.dims() && is_isomorphic(r, &next))
                {
                    reps.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        if reps.len() != expected {
            return Err(Error::invariant(format!(
                "knitting found {} indecomposables, diagram has {} positive roots",
                reps.len(),
                expected
            )));
        }
        reps.sort_by_key(|r| (r.total_dim(), r.dims().to_vec()));
        let members = reps
            .into_iter()
            .map(|rep| {
                let class = MemberClass::Root;
                Member { label: class.label(rep.dims()), class, rep }
            })
            .collect();
        Ok(Universe::assemble(quiver, field, UniverseKind::Dynkin, members))
    }

    /// Kronecker catalog: preprojectives and preinjectives of index at most
    /// `bound`, and every tube truncated at quasi-length `bound`.
    pub fn kronecker(field: FieldSpec, bound: usize) -> Result<Universe> {
        if bound == 0 {
            return Err(Error::invalid("Kronecker bound must be positive"));
        }
        let quiver = kronecker_quiver();
        let mut members = Vec::new();
        let mut pre = vec![projective(&quiver, field, 1), projective(&quiver, field, 0)];
        while pre.len() < bound + 1 {
            let next = tau_inverse(&pre[pre.len() - 2])?
                .expect("preprojectives are never injective");
            pre.push(next);
        }
        for (n, rep) in pre.into_iter().take(bound + 1).enumerate() {
            let class = MemberClass::Preprojective(n);
            members.push(Member { label: class.label(rep.dims()), class, rep });
        }
        let mut lambdas: Vec<RegLambda> =
            field.elements().map(RegLambda::Finite).collect();
        lambdas.push(RegLambda::Infinity);
        for lambda in lambdas {
            for len in 1..=bound {
                let rep = kronecker_regular(&quiver, field, lambda, len);
                let class = MemberClass::Regular { lambda, len };
                members.push(Member { label: class.label(rep.dims()), class, rep });
            }
        }
        let mut inj = vec![injective(&quiver, field, 0), injective(&quiver, field, 1)];
        while inj.len() < bound + 1 {
            let next =
                tau(&inj[inj.len() - 2])?.expect("preinjectives are never projective");
            inj.push(next);
        }
        for (n, rep) in inj.into_iter().take(bound + 1).enumerate() {
            let class = MemberClass::Preinjective(n);
            members.push(Member { label: class.label(rep.dims()), class, rep });
        }
        Ok(Universe::assemble(
            quiver,
            field,
            UniverseKind::Kronecker { bound },
            members,
        ))
    }

    /// Tube catalog: all uniserials of length at most `bound` over the
    /// cyclic quiver of the given rank.
    pub fn tube(field: FieldSpec, rank: usize, bound: usize) -> Result<Universe> {
        if bound == 0 {
            return Err(Error::invalid("tube bound must be positive"));
        }
        let quiver = tube_quiver(rank)?;
        let mut members = Vec::new();
        for socle in 1..=rank {
            for len in 1..=bound {
                let rep = tube_chain(&quiver, field, rank, socle, len);
                let class = MemberClass::TubeChain { socle, len };
                members.push(Member { label: class.label(rep.dims()), class, rep });
            }
        }
        Ok(Universe::assemble(
            quiver,
            field,
            UniverseKind::Tube { rank, bound },
            members,
        ))
    }

    fn assemble(
        quiver: Arc<Quiver>,
        field: FieldSpec,
        kind: UniverseKind,
        members: Vec<Member>,
    ) -> Universe {
        let by_label = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.label.clone(), i))
            .collect();
        let n = members.len();
        let mut hom = vec![vec![0; n]; n];
        let mut ext = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                hom[i][j] = hom_dim(&members[i].rep, &members[j].rep);
                ext[i][j] = ext_dim(&members[i].rep, &members[j].rep);
            }
        }
        Universe { quiver, field, kind, members, by_label, hom, ext }
    }

    /// Rebuild from previously serialized parts, recomputing nothing.
    /// The caller vouches for internal consistency (used by the cache layer,
    /// which only feeds back data this type produced).
    pub fn from_parts(
        quiver: Arc<Quiver>,
        field: FieldSpec,
        kind: UniverseKind,
        members: Vec<Member>,
        hom: Vec<Vec<usize>>,
        ext: Vec<Vec<usize>>,
    ) -> Universe {
        let by_label = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.label.clone(), i))
            .collect();
        Universe { quiver, field, kind, members, by_label, hom, ext }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn kind(&self) -> UniverseKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Member {
        &self.members[i]
    }

    pub fn rep(&self, i: usize) -> &Representation {
        &self.members[i].rep
    }

    pub fn label(&self, i: usize) -> &str {
        &self.members[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn ext_table(&self) -> &[Vec<usize>] {
        &self.ext
    }

    pub fn is_brick(&self, i: usize) -> bool {
        self.hom[i][i] == 1
    }

    /// Index of the catalog member isomorphic to the given representation.
    pub fn identify(&self, rep: &Representation) -> Option<usize> {
        self.members
            .iter()
            .position(|m| m.rep.dims() == rep.dims() && is_isomorphic(&m.rep, rep))
    }
}

/// Regular Kronecker module in the tube at `lambda`: for finite lambda the
/// arrows act by (identity, Jordan block at lambda); at infinity by
/// (nilpotent Jordan block, identity).
pub fn kronecker_regular(
    quiver: &Arc<Quiver>,
    field: FieldSpec,
    lambda: RegLambda,
    len: usize,
) -> Representation {
    let jordan = |diag: u64| {
        Mat::from_fn(field, len, len, |r, c| {
            if r == c {
                diag
            } else {
                u64::from(c == r + 1)
            }
        })
    };
    let (a, b) = match lambda {
        RegLambda::Finite(x) => (Mat::identity(field, len), jordan(x)),
        RegLambda::Infinity => (jordan(0), Mat::identity(field, len)),
    };
    Representation::new(quiver.clone(), field, vec![len, len], vec![a, b])
        .expect("regular module is well-shaped")
}

/// Uniserial tube module with socle at `socle` (1-based) and the given
/// length: basis vectors v_0..v_{len-1}, v_t at vertex socle+t (mod rank),
/// with each arrow sending v_t to v_{t-1} and the socle vector to zero.
pub fn tube_chain(
    quiver: &Arc<Quiver>,
    field: FieldSpec,
    rank: usize,
    socle: usize,
    len: usize,
) -> Representation {
    assert!((1..=rank).contains(&socle));
    let base = socle - 1;
    let vertex_of = |t: usize| (base + t) % rank;
    let mut dims = vec![0usize; rank];
    let mut position = Vec::with_capacity(len);
    for t in 0..len {
        let v = vertex_of(t);
        position.push(dims[v]);
        dims[v] += 1;
    }
    let mut maps: Vec<Mat> = quiver
        .arrows()
        .iter()
        .map(|a| Mat::zero(field, dims[a.tgt], dims[a.src]))
        .collect();
    // Arrow with source j is the one acting on vectors living at vertex j.
    for t in 1..len {
        let j = vertex_of(t);
        let arrow = quiver
            .arrows()
            .iter()
            .position(|a| a.src == j)
            .expect("cyclic quiver has one arrow out of each vertex");
        maps[arrow].set(position[t - 1], position[t], 1);
    }
    Representation::new(quiver.clone(), field, dims, maps)
        .expect("tube chain is nilpotent by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::{decompose, extension_realization, ext_space};

    fn f5() -> FieldSpec {
        FieldSpec::new(5).unwrap()
    }

    #[test]
    fn a2_universe_has_three_roots() {
        let u = Universe::dynkin(linear_quiver(2), f5()).unwrap();
        assert_eq!(u.len(), 3);
        let labels: Vec<&str> = u.members().iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, ["root[0,1]", "root[1,0]", "root[1,1]"]);
        assert_eq!(u.hom(2, 1), 1, "P1 covers S1");
        assert_eq!(u.ext(1, 0), 1, "S1 extends by S2");
        assert_eq!(u.ext(0, 1), 0);
    }

    #[test]
    fn a3_universe_has_six_roots() {
        let u = Universe::dynkin(linear_quiver(3), f5()).unwrap();
        assert_eq!(u.len(), 6);
        for m in u.members() {
            assert_eq!(hom_dim(&m.rep, &m.rep), 1, "Dynkin indecomposables are bricks");
        }
    }

    #[test]
    fn d4_universe_has_twelve_roots() {
        let u = Universe::dynkin(d4_quiver(), f5()).unwrap();
        assert_eq!(u.len(), 12);
        let dims_221 = u
            .members()
            .iter()
            .filter(|m| m.rep.dims() == [1, 1, 1, 2])
            .count();
        assert_eq!(dims_221, 1, "the highest root appears once");
    }

    #[test]
    fn non_dynkin_is_refused() {
        assert!(Universe::dynkin(kronecker_quiver(), f5()).is_err());
        let cyclic = tube_quiver(3).unwrap();
        assert!(Universe::dynkin(cyclic, f5()).is_err());
    }

    #[test]
    fn kronecker_universe_counts_and_dims() {
        let u = Universe::kronecker(f5(), 3).unwrap();
        // 4 preprojectives, 4 preinjectives, 6 tubes of depth 3.
        assert_eq!(u.len(), 4 + 4 + 6 * 3);
        let pre2 = u.index_of("pre(2)").unwrap();
        assert_eq!(u.rep(pre2).dims(), &[2, 3]);
        let inj2 = u.index_of("inj(2)").unwrap();
        assert_eq!(u.rep(inj2).dims(), &[3, 2]);
        let reg = u.index_of("reg(inf,2)").unwrap();
        assert_eq!(u.rep(reg).dims(), &[2, 2]);
    }

    #[test]
    fn kronecker_hom_ext_spot_checks() {
        let u = Universe::kronecker(f5(), 3).unwrap();
        let idx = |l: &str| u.index_of(l).unwrap();
        assert_eq!(u.hom(idx("pre(0)"), idx("pre(1)")), 2);
        assert_eq!(u.hom(idx("pre(1)"), idx("pre(0)")), 0);
        assert_eq!(u.ext(idx("inj(0)"), idx("pre(0)")), 2);
        assert_eq!(u.hom(idx("pre(0)"), idx("reg(2,1)")), 1);
        assert_eq!(u.hom(idx("reg(2,1)"), idx("reg(3,1)")), 0);
        assert_eq!(u.hom(idx("reg(2,2)"), idx("reg(2,2)")), 2);
        assert_eq!(u.ext(idx("reg(2,1)"), idx("reg(2,1)")), 1, "tube self-extension");
        assert_eq!(u.hom(idx("inj(1)"), idx("inj(0)")), 2);
        assert_eq!(u.hom(idx("inj(0)"), idx("pre(3)")), 0);
    }

    #[test]
    fn kronecker_members_are_indecomposable() {
        let u = Universe::kronecker(f5(), 2).unwrap();
        for m in u.members() {
            assert_eq!(decompose(&m.rep).len(), 1, "{} decomposed", m.label);
        }
    }

    #[test]
    fn identify_finds_twisted_copies() {
        let u = Universe::kronecker(f5(), 2).unwrap();
        // A conjugated regular module must identify to its Jordan form.
        let q = u.quiver().clone();
        let f = f5();
        let g = Mat::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let ginv = g.inverse().unwrap();
        let orig = u.rep(u.index_of("reg(2,2)").unwrap());
        let twisted = Representation::new(
            q,
            f,
            vec![2, 2],
            vec![
                g.mul(orig.map(0)).mul(&ginv),
                g.mul(orig.map(1)).mul(&ginv),
            ],
        )
        .unwrap();
        let found = u.identify(&twisted).unwrap();
        assert_eq!(u.label(found), "reg(2,2)");
        assert!(u.identify(&Representation::zero(u.quiver().clone(), f)).is_none());
    }

    #[test]
    fn tube_orientation_matches_socle_convention() {
        let u = Universe::tube(f5(), 3, 2).unwrap();
        assert_eq!(u.len(), 6);
        let idx = |l: &str| u.index_of(l).unwrap();
        // Simples extend downward along the cycle: a nonsplit extension of
        // S_a by S_b exists exactly when b = a - 1 (mod 3).
        for a in 1..=3usize {
            for b in 1..=3usize {
                let expected = usize::from(b == if a == 1 { 3 } else { a - 1 });
                assert_eq!(
                    u.ext(idx(&format!("s({a},1)")), idx(&format!("s({b},1)"))),
                    expected,
                    "ext(S_{a}, S_{b})"
                );
            }
        }
        // s(1,2) contains s(1,1) as its socle with top s(2,1).
        assert_eq!(u.hom(idx("s(1,1)"), idx("s(1,2)")), 1);
        assert_eq!(u.hom(idx("s(1,2)"), idx("s(2,1)")), 1);
    }

    #[test]
    fn tube_chain_extension_realizes_longer_chain() {
        let u = Universe::tube(f5(), 3, 3).unwrap();
        let idx = |l: &str| u.index_of(l).unwrap();
        let socle = u.rep(idx("s(1,1)"));
        let top = u.rep(idx("s(2,2)"));
        let ext = ext_space(top, socle);
        assert_eq!(ext.dim, 1);
        let (mid, incl, proj) = extension_realization(top, socle, &ext.cocycles[0]).unwrap();
        assert!(incl.is_mono() && proj.is_epi());
        assert_eq!(u.identify(&mid), Some(idx("s(1,3)")));
    }

    #[test]
    fn rank_one_tube_is_jordan_theory() {
        let u = Universe::tube(f5(), 1, 4).unwrap();
        assert_eq!(u.len(), 4);
        let idx = |l: &str| u.index_of(l).unwrap();
        for k in 1..=4usize {
            for l in 1..=4usize {
                assert_eq!(
                    u.hom(idx(&format!("s(1,{k})")), idx(&format!("s(1,{l})"))),
                    k.min(l),
                    "hom between Jordan blocks"
                );
            }
        }
    }

    #[test]
    fn rank_two_tube_counts() {
        let u = Universe::tube(f5(), 2, 4).unwrap();
        assert_eq!(u.len(), 8);
        let idx = |l: &str| u.index_of(l).unwrap();
        assert!(u.is_brick(idx("s(1,2)")));
        assert!(!u.is_brick(idx("s(1,3)")), "length beyond the rank is no brick");
    }

    #[test]
    fn serialization_round_trips_byte_identically() {
        for u in [
            Universe::dynkin(linear_quiver(3), f5()).unwrap(),
            Universe::kronecker(f5(), 2).unwrap(),
            Universe::tube(f5(), 2, 2).unwrap(),
        ] {
            let once = serde_json::to_string(&u).unwrap();
            let back: Universe = serde_json::from_str(&once).unwrap();
            assert_eq!(serde_json::to_string(&back).unwrap(), once);
            assert_eq!(back.len(), u.len());
            for i in 0..u.len() {
                assert_eq!(back.label(i), u.label(i));
                for j in 0..u.len() {
                    assert_eq!(back.hom(i, j), u.hom(i, j));
                    assert_eq!(back.ext(i, j), u.ext(i, j));
                }
            }
        }
    }
}
