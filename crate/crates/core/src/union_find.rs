/// Disjoint sets over `0..n` with path compression and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the two sets were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    /// Class index per element, classes numbered by their least member.
    pub(crate) fn canonical_classes(&mut self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.parent.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut class_of = vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            class_of[x] = id_of_root[r];
            classes[id_of_root[r]].push(x);
        }
        (class_of, classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_numbered_by_least_member() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 1);
        uf.union(3, 0);
        assert!(!uf.union(1, 4));
        let (class_of, classes) = uf.canonical_classes();
        assert_eq!(class_of, vec![0, 1, 2, 0, 1]);
        assert_eq!(classes, vec![vec![0, 3], vec![1, 4], vec![2]]);
    }
}
