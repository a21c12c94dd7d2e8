use alloc::vec::Vec;

/// Disjoint sets over `0..n`. The root of each class is its least member, so
/// representatives follow the interning order.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
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

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Class index of every element, numbering classes by their least member.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.parent.len();
        let mut class_of = Vec::with_capacity(n);
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut index_of_root = alloc::vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = members.len();
                members.push(Vec::new());
            }
            class_of.push(index_of_root[r]);
            members[index_of_root[r]].push(x);
        }
        (class_of, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_member_is_representative() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(3, 4);
        assert_eq!(uf.find(3), 2);
        let (class_of, members) = uf.classes();
        assert_eq!(class_of, [0, 1, 2, 2, 2]);
        assert_eq!(members[2], [2, 3, 4]);
    }
}
