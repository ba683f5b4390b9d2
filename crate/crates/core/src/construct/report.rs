use std::fmt::{self, Display, Write as _};

use crate::linalg::Subspace;

/// One `key: value` line with nested children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub key: String,
    pub value: String,
    pub children: Vec<Node>,
}

impl Node {
    pub fn new(key: &str, value: impl Display) -> Node {
        Node {
            key: key.to_string(),
            value: value.to_string(),
            children: Vec::new(),
        }
    }

    pub fn leaf(mut self, key: &str, value: impl Display) -> Node {
        self.children.push(Node::new(key, value));
        self
    }

    pub fn child(mut self, n: Node) -> Node {
        self.children.push(n);
        self
    }

    pub fn push(&mut self, n: Node) {
        self.children.push(n);
    }

    /// Attaches each line of `text` as a `row` child.
    pub fn text_block(mut self, text: &str) -> Node {
        for line in text.lines() {
            self.children.push(Node::new("row", line));
        }
        self
    }

    pub fn find(&self, key: &str) -> Option<&Node> {
        self.children.iter().find(|c| c.key == key)
    }

    fn write(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        if self.value.is_empty() {
            writeln!(out, "{pad}{}:", self.key).unwrap();
        } else {
            writeln!(out, "{pad}{}: {}", self.key, self.value).unwrap();
        }
        for c in &self.children {
            c.write(out, depth + 1);
        }
    }
}

/// Witness code plus the trail of decisions that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub operation: String,
    pub seeds: Vec<u64>,
    pub trail: Vec<Node>,
    pub code: Subspace,
}

impl ConstructionReport {
    pub fn new(operation: &str, seeds: Vec<u64>, trail: Vec<Node>, code: Subspace) -> ConstructionReport {
        ConstructionReport {
            operation: operation.to_string(),
            seeds,
            trail,
            code,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        Node::new("operation", &self.operation).write(&mut out, 0);
        let seeds: Vec<String> = self.seeds.iter().map(u64::to_string).collect();
        Node::new("seeds", seeds.join(" ")).write(&mut out, 0);
        let mut trail = Node::new("trail", self.trail.len());
        trail.children = self.trail.clone();
        trail.write(&mut out, 0);
        Node::new("code", "")
            .leaf("field_order", self.code.field().order())
            .leaf("length", self.code.ambient())
            .leaf("dimension", self.code.dim())
            .write(&mut out, 0);
        out
    }
}

impl fmt::Display for ConstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_text() {
        let n = Node::new("level", 0).leaf("case", "regular").child(Node::new("sub", "").leaf("n", 7));
        let mut s = String::new();
        n.write(&mut s, 1);
        assert_eq!(s, "  level: 0\n    case: regular\n    sub:\n      n: 7\n");
    }
}
