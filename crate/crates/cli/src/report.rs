use serde_json::{json, Map, Value};

/// How a command ended: 0 ok, 2 invalid input, 3 search ran out of fuel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Unresolved,
}

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Exhausted(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Exhausted(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Exhausted(m) => m,
        }
    }
}

/// One result, rendered either as plain lines or as a JSON object.
pub struct Report {
    pub op: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub certificate: Value,
    pub lines: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(op: &'static str) -> Self {
        Report {
            op,
            inputs: Map::new(),
            result: Value::Null,
            certificate: Value::Null,
            lines: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let obj = json!({
                "op": self.op,
                "inputs": self.inputs,
                "result": self.result,
                "certificate": self.certificate,
            });
            format!("{obj}\n")
        } else {
            self.lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}
