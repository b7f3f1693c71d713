//! Ask-tell wire protocol for external solver processes.
//!
//! Line-oriented UTF-8 over the child's stdin/stdout:
//!
//! ```text
//! harness> MOBENCH 1 <problem> <n> <m> <budget> <seed>
//! harness> L <l1> ... <ln>
//! harness> U <u1> ... <un>
//! child>   X <x1> ... <xn>
//! harness> F <f1> ... <fm>
//! ...                            (one X/F exchange per evaluation)
//! harness> STOP                  (after the budget-th reply)
//! ```
//!
//! Floats use shortest round-trip decimals, fields are single-space
//! separated. The child must exit within five seconds of STOP or it is
//! killed. An out-of-bounds request is answered with an `ERROR ...` line
//! and ends the session. The harness counts evaluations; the child never
//! sees objective values it did not pay for.

use super::{EvalItem, SolverError};
use crate::pareto::DecisionVector;
use crate::problems::ProblemInstance;
use std::io::{BufRead, BufReader, Lines, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};
use std::time::{Duration, Instant};

pub struct ExternalSession<'a> {
    problem: &'a ProblemInstance,
    budget: u64,
    fe: u64,
    child: Child,
    stdin: Option<ChildStdin>,
    lines: Lines<BufReader<ChildStdout>>,
    line_no: u64,
    done: bool,
    command: String,
}

/// Spawns the child and performs the greeting handshake.
pub fn external_solver_session<'a>(
    command: &[String],
    problem: &'a ProblemInstance,
    budget: u64,
    seed: u64,
) -> Result<ExternalSession<'a>, SolverError> {
    let display = command.join(" ");
    let mut child = Command::new(&command[0])
        .args(&command[1..])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::inherit())
        .spawn()
        .map_err(|source| SolverError::Spawn {
            command: display.clone(),
            source,
        })?;
    let mut stdin = child.stdin.take().expect("stdin piped");
    let stdout = child.stdout.take().expect("stdout piped");
    let meta = problem.meta();
    let mut greeting = format!(
        "MOBENCH 1 {} {} {} {} {}\n",
        meta.name, meta.n, meta.m, budget, seed
    );
    greeting.push('L');
    for v in &meta.lower {
        greeting.push(' ');
        greeting.push_str(&v.to_string());
    }
    greeting.push('\n');
    greeting.push('U');
    for v in &meta.upper {
        greeting.push(' ');
        greeting.push_str(&v.to_string());
    }
    greeting.push('\n');
    stdin.write_all(greeting.as_bytes())?;
    stdin.flush()?;
    Ok(ExternalSession {
        problem,
        budget,
        fe: 0,
        child,
        stdin: Some(stdin),
        lines: BufReader::new(stdout).lines(),
        line_no: 0,
        done: false,
        command: display,
    })
}

impl ExternalSession<'_> {
    pub fn fe_consumed(&self) -> u64 {
        self.fe
    }

    fn send(&mut self, line: &str) -> std::io::Result<()> {
        if let Some(stdin) = self.stdin.as_mut() {
            stdin.write_all(line.as_bytes())?;
            stdin.write_all(b"\n")?;
            stdin.flush()?;
        }
        Ok(())
    }

    /// STOP, five-second grace, then kill.
    fn shutdown(&mut self) {
        if self.done {
            return;
        }
        self.done = true;
        let _ = self.send("STOP");
        self.stdin = None; // close the pipe so line-readers unblock
        let deadline = Instant::now() + Duration::from_secs(5);
        loop {
            match self.child.try_wait() {
                Ok(Some(_)) => return,
                Ok(None) => {
                    if Instant::now() >= deadline {
                        let _ = self.child.kill();
                        let _ = self.child.wait();
                        eprintln!(
                            "momark: killed external solver {:?} (did not exit within 5s of STOP)",
                            self.command
                        );
                        return;
                    }
                    std::thread::sleep(Duration::from_millis(20));
                }
                Err(_) => return,
            }
        }
    }

    fn protocol_error(&mut self, message: String) -> SolverError {
        let line = self.line_no;
        self.shutdown();
        SolverError::Protocol { line, message }
    }
}

impl Iterator for ExternalSession<'_> {
    type Item = EvalItem;

    fn next(&mut self) -> Option<EvalItem> {
        if self.done {
            return None;
        }
        if self.fe >= self.budget {
            self.shutdown();
            return None;
        }
        let line = match self.lines.next() {
            None => {
                eprintln!(
                    "momark: external solver {:?} closed its output after {} of {} evaluations",
                    self.command, self.fe, self.budget
                );
                self.shutdown();
                return None;
            }
            Some(Err(e)) => {
                self.shutdown();
                return Some(Err(SolverError::Io(e)));
            }
            Some(Ok(line)) => line,
        };
        self.line_no += 1;
        let mut fields = line.split(' ');
        if fields.next() != Some("X") {
            return Some(Err(
                self.protocol_error(format!("expected an X line, got {line:?}"))
            ));
        }
        let mut xs = Vec::with_capacity(self.problem.n());
        for field in fields {
            match field.parse::<f64>() {
                Ok(v) => xs.push(v),
                Err(_) => {
                    return Some(Err(
                        self.protocol_error(format!("unparseable coordinate {field:?}"))
                    ))
                }
            }
        }
        if xs.len() != self.problem.n() {
            return Some(Err(self.protocol_error(format!(
                "X carries {} coordinates, problem has n={}",
                xs.len(),
                self.problem.n()
            ))));
        }
        match self.problem.evaluate(&DecisionVector(xs)) {
            Ok(f) => {
                self.fe += 1;
                let mut reply = String::from("F");
                for v in f.values() {
                    reply.push(' ');
                    reply.push_str(&v.to_string());
                }
                if let Err(e) = self.send(&reply) {
                    self.shutdown();
                    return Some(Err(SolverError::Io(e)));
                }
                Some(Ok((self.fe, f)))
            }
            Err(domain) => {
                let _ = self.send(&format!("ERROR {domain}"));
                self.shutdown();
                Some(Err(SolverError::Problem(domain)))
            }
        }
    }
}

impl Drop for ExternalSession<'_> {
    fn drop(&mut self) {
        self.shutdown();
    }
}
