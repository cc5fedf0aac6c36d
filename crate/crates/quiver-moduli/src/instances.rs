//! Bundled example instances used by the test suite and the CLI `example`
//! command.

use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Path, Quiver, Relation, Representation, Weight};

/// A quiver with relations and a distinguished weight.
#[derive(Clone, Debug)]
pub struct Instance {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub theta: Weight,
}

/// Wild three-vertex quiver: four parallel arrows 1->2 (`a0..a3`), four
/// parallel arrows 2->3 (`b0..b3`), commuting relations `a_i b_j = a_j b_i`
/// and the extra relation `a1 b2 = 0`; weight (2,-1,-1).
pub fn commuting_squares() -> Instance {
    let vertices = vec!["1".to_string(), "2".to_string(), "3".to_string()];
    let mut arrows = Vec::new();
    for i in 0..4 {
        arrows.push((format!("a{i}"), "1".to_string(), "2".to_string()));
    }
    for i in 0..4 {
        arrows.push((format!("b{i}"), "2".to_string(), "3".to_string()));
    }
    let quiver = Quiver::new(vertices, arrows).expect("valid quiver");
    let mut relations = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            let p1 = Path::from_ids(&quiver, &[&format!("a{i}"), &format!("b{j}")]).unwrap();
            let p2 = Path::from_ids(&quiver, &[&format!("a{j}"), &format!("b{i}")]).unwrap();
            relations.push(
                Relation::new(
                    &quiver,
                    vec![
                        (Scalar::one(Field::Q), p1),
                        (-Scalar::one(Field::Q), p2),
                    ],
                )
                .unwrap(),
            );
        }
    }
    let p = Path::from_ids(&quiver, &["a1", "b2"]).unwrap();
    relations.push(Relation::new(&quiver, vec![(Scalar::one(Field::Q), p)]).unwrap());
    Instance {
        quiver,
        relations,
        theta: Weight(vec![2, -1, -1]),
    }
}

/// Representation of [`commuting_squares`] with dimension vector (1,1,1),
/// given by the two coefficient 4-tuples.
pub fn cs_rep(inst: &Instance, a: [i64; 4], b: [i64; 4], field: Field) -> Result<Representation> {
    let one = |v: i64| Matrix::from_fn(1, 1, field, |_, _| Scalar::from_int(v, field));
    let mats = a.iter().chain(b.iter()).map(|&v| one(v)).collect();
    Representation::new(&inst.quiver, DimVector(vec![1, 1, 1]), field, mats)
}

/// Special biserial quiver: `al: 1->2`, `be: 1->3`, `ga: 2->3`, `gp: 3->2`,
/// relations `ga gp = gp ga = 0`; weight (2,-1,-1).
pub fn biserial() -> Instance {
    let vertices = vec!["1".to_string(), "2".to_string(), "3".to_string()];
    let arrows = vec![
        ("al".to_string(), "1".to_string(), "2".to_string()),
        ("be".to_string(), "1".to_string(), "3".to_string()),
        ("ga".to_string(), "2".to_string(), "3".to_string()),
        ("gp".to_string(), "3".to_string(), "2".to_string()),
    ];
    let quiver = Quiver::new(vertices, arrows).expect("valid quiver");
    let relations = vec![
        Relation::new(
            &quiver,
            vec![(
                Scalar::one(Field::Q),
                Path::from_ids(&quiver, &["ga", "gp"]).unwrap(),
            )],
        )
        .unwrap(),
        Relation::new(
            &quiver,
            vec![(
                Scalar::one(Field::Q),
                Path::from_ids(&quiver, &["gp", "ga"]).unwrap(),
            )],
        )
        .unwrap(),
    ];
    Instance {
        quiver,
        relations,
        theta: Weight(vec![2, -1, -1]),
    }
}

/// Representation of [`biserial`] with dimension vector (1,1,1) and the given
/// scalar over each arrow (order: al, be, ga, gp).
pub fn bs_rep(inst: &Instance, vals: [i64; 4], field: Field) -> Result<Representation> {
    let mats = vals
        .iter()
        .map(|&v| Matrix::from_fn(1, 1, field, |_, _| Scalar::from_int(v, field)))
        .collect();
    Representation::new(&inst.quiver, DimVector(vec![1, 1, 1]), field, mats)
}

/// The (2,2,2)-dimensional band family member of [`biserial`]:
/// al = be = I2, ga = [[0,1],[0,0]], gp = [[0,λ],[0,0]].
pub fn bs_band(inst: &Instance, lambda: i64, field: Field) -> Result<Representation> {
    let id2 = Matrix::identity(2, field);
    let nil = |top: i64| Matrix::from_int_rows(field, &[vec![0, top], vec![0, 0]]);
    Representation::new(
        &inst.quiver,
        DimVector(vec![2, 2, 2]),
        field,
        vec![id2.clone(), id2, nil(1), nil(lambda)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::check_relations;

    #[test]
    fn commuting_squares_relations_hold_on_proportional_tuples() {
        let inst = commuting_squares();
        let m = cs_rep(&inst, [1, 0, 0, 0], [1, 0, 0, 0], Field::Q).unwrap();
        assert!(check_relations(&inst.quiver, &m, &inst.relations)
            .unwrap()
            .is_empty());
        // a=(0,1,0,0), b=(0,0,1,0) breaks the (1,2) commutator and a1*b2
        let bad = cs_rep(&inst, [0, 1, 0, 0], [0, 0, 1, 0], Field::Q).unwrap();
        assert_eq!(
            check_relations(&inst.quiver, &bad, &inst.relations).unwrap(),
            vec![3, 6]
        );
    }

    #[test]
    fn band_members_satisfy_relations() {
        let inst = biserial();
        for lambda in 0..4 {
            let m = bs_band(&inst, lambda, Field::Q).unwrap();
            assert!(check_relations(&inst.quiver, &m, &inst.relations)
                .unwrap()
                .is_empty());
        }
    }
}
