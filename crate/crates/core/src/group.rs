//! The quaternion group Q₈, its classes, centralizers and irreps.

use std::fmt;

use serde::Serialize;

use crate::exact::ExactScalar;
use crate::matrix::ExactMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Element {
    E,
    EBar,
    I,
    IBar,
    J,
    JBar,
    K,
    KBar,
}

pub use Element::*;

pub const ELEMENTS: [Element; 8] = [E, EBar, I, IBar, J, JBar, K, KBar];

// Row a, column b holds a·b, indices as in ELEMENTS.
const CAYLEY: [[u8; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
];

impl Element {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Element {
        ELEMENTS[i]
    }

    pub fn name(self) -> &'static str {
        ["e", "ē", "i", "ī", "j", "j̄", "k", "k̄"][self.index()]
    }

    pub fn inverse(self) -> Element {
        match self {
            E | EBar => self,
            _ => multiply(EBar, self),
        }
    }

    /// g·self·g⁻¹
    pub fn conjugated_by(self, g: Element) -> Element {
        multiply(multiply(g, self), g.inverse())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn multiply(a: Element, b: Element) -> Element {
    ELEMENTS[CAYLEY[a.index()][b.index()] as usize]
}

pub fn cayley_table() -> [[Element; 8]; 8] {
    let mut t = [[E; 8]; 8];
    for a in ELEMENTS {
        for b in ELEMENTS {
            t[a.index()][b.index()] = multiply(a, b);
        }
    }
    t
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum ClassLabel {
    Ce,
    CeBar,
    Ci,
    Cj,
    Ck,
}

pub const CLASSES: [ClassLabel; 5] = [ClassLabel::Ce, ClassLabel::CeBar, ClassLabel::Ci, ClassLabel::Cj, ClassLabel::Ck];

/// Which coset representative maps the class representative to each member.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Section {
    /// First g in element order with g·r·g⁻¹ = m.
    #[default]
    First,
    /// Last such g.
    Last,
}

impl ClassLabel {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["C_e", "C_ē", "C_i", "C_j", "C_k"][self.index()]
    }

    pub fn members(self) -> &'static [Element] {
        match self {
            ClassLabel::Ce => &[E],
            ClassLabel::CeBar => &[EBar],
            ClassLabel::Ci => &[I, IBar],
            ClassLabel::Cj => &[J, JBar],
            ClassLabel::Ck => &[K, KBar],
        }
    }

    pub fn representative(self) -> Element {
        self.members()[0]
    }

    pub fn size(self) -> usize {
        self.members().len()
    }

    pub fn centralizer(self) -> Vec<Element> {
        let r = self.representative();
        ELEMENTS.iter().copied().filter(|&g| multiply(g, r) == multiply(r, g)).collect()
    }

    /// Order-4 generator of the centralizer for the non-central classes.
    pub fn generator(self) -> Option<Element> {
        match self {
            ClassLabel::Ci => Some(I),
            ClassLabel::Cj => Some(J),
            ClassLabel::Ck => Some(K),
            _ => None,
        }
    }

    pub fn is_central(self) -> bool {
        self.size() == 1
    }

    pub fn section(self, member: Element, section: Section) -> Element {
        let r = self.representative();
        let mut hits = ELEMENTS.iter().copied().filter(|&g| r.conjugated_by(g) == member);
        match section {
            Section::First => hits.next(),
            Section::Last => hits.next_back(),
        }
        .expect("member not in class")
    }
}

pub fn conjugacy_class_of(g: Element) -> ClassLabel {
    *CLASSES.iter().find(|c| c.members().contains(&g)).expect("every element has a class")
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum GroupKind {
    Q8,
    Centralizer(ClassLabel),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum IrrepLabel {
    Lambda(u8),
    Pi(u8),
}

impl IrrepLabel {
    pub fn name(self) -> String {
        match self {
            IrrepLabel::Lambda(a) => format!("Λ{a}"),
            IrrepLabel::Pi(a) => format!("Π{a}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Irrep {
    pub group: GroupKind,
    pub label: IrrepLabel,
    pub dimension: usize,
    images: Vec<(Element, ExactMatrix)>,
}

impl Irrep {
    pub fn image(&self, g: Element) -> &ExactMatrix {
        &self.images.iter().find(|(h, _)| *h == g).expect("element outside the irrep's group").1
    }

    pub fn character(&self, g: Element) -> ExactScalar {
        let m = self.image(g);
        (0..m.rows()).fold(ExactScalar::ZERO, |acc, i| acc + m.get(i, i))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.images.iter().map(|(g, _)| *g)
    }
}

fn scalar(v: ExactScalar) -> ExactMatrix {
    ExactMatrix::diag(&[v])
}

/// Λ_a of Q₈, a ∈ 0..=4.
pub fn q8_irrep(a: u8) -> Irrep {
    let images = ELEMENTS
        .iter()
        .map(|&g| {
            let m = match a {
                0 => scalar(ExactScalar::ONE),
                1..=3 => {
                    let x = [I, J, K][a as usize - 1];
                    let keep = [E, EBar, x, x.inverse()];
                    scalar(if keep.contains(&g) { ExactScalar::ONE } else { -ExactScalar::ONE })
                }
                4 => lambda4(g),
                _ => panic!("Q8 has five irreps"),
            };
            (g, m)
        })
        .collect();
    Irrep { group: GroupKind::Q8, label: IrrepLabel::Lambda(a), dimension: if a == 4 { 2 } else { 1 }, images }
}

fn lambda4(g: Element) -> ExactMatrix {
    let o = ExactScalar::ONE;
    let z = ExactScalar::ZERO;
    let i = ExactScalar::I;
    let li = ExactMatrix::diag(&[i, -i]);
    let lj = ExactMatrix::from_rows(vec![vec![z, o], vec![-o, z]]);
    match g {
        E => ExactMatrix::identity(2),
        I => li,
        J => lj,
        K => &li * &lj,
        _ => lambda4(multiply(EBar, g)).scale(-o),
    }
}

/// Π_a of the ℤ₄ centralizer of a non-central class: generator ↦ i^a.
pub fn centralizer_irrep(class: ClassLabel, a: u8) -> Irrep {
    let gen = class.generator().expect("central classes have the whole group as centralizer");
    let power = |g: Element| -> i64 {
        match g {
            E => 0,
            EBar => 2,
            _ if g == gen => 1,
            _ => 3,
        }
    };
    let images = class
        .centralizer()
        .into_iter()
        .map(|g| (g, scalar(ExactScalar::zeta(2 * a as i64 * power(g)))))
        .collect();
    Irrep { group: GroupKind::Centralizer(class), label: IrrepLabel::Pi(a), dimension: 1, images }
}

pub fn irreps(group: GroupKind) -> Vec<Irrep> {
    match group {
        GroupKind::Q8 => (0..5).map(q8_irrep).collect(),
        GroupKind::Centralizer(c) if c.is_central() => (0..5).map(q8_irrep).collect(),
        GroupKind::Centralizer(c) => (0..4).map(|a| centralizer_irrep(c, a)).collect(),
    }
}
