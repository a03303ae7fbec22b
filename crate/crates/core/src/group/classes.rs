use super::Group;

/// Conjugacy classes, ordered by their smallest element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassPartition {
    /// Wraps an explicit partition of `0..n`, e.g. a coarser or finer
    /// grouping than the conjugacy classes.
    pub fn from_classes(classes: Vec<Vec<usize>>) -> Self {
        let n = classes.iter().map(Vec::len).sum();
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x] = c;
            }
        }
        Self { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Smallest element of class `c`.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Classes as 1-based element indices.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|x| x + 1).collect())
            .collect()
    }
}

pub fn conjugacy_classes(g: &Group) -> ClassPartition {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members: Vec<usize> = (0..n).map(|h| g.conjugate(h, x)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = id;
        }
        classes.push(members);
    }
    ClassPartition { classes, class_of }
}
