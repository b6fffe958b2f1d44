mod args;
mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use ab_ring::RingError;
use clap::Parser;

use args::{Cli, Command, Format, OutputArgs};

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    // clap prints usage and exits with status 2 on malformed arguments
    let cli = Cli::parse();
    let (name, output) = match &cli.command {
        Command::Spectrum(a) => ("spectrum", &a.output),
        Command::Current(a) => ("current", &a.output),
        Command::Persistent(a) => ("persistent", &a.output),
        Command::Sweep(a) => ("sweep", &a.output),
        Command::Verify(a) => ("verify", &a.output),
    };
    let result = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Current(a) => commands::current(a),
        Command::Persistent(a) => commands::persistent(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Verify(a) => commands::verify(a),
    };

    let (written, code) = match result {
        Ok(report) => {
            let code = if report.failed { EXIT_DOMAIN } else { 0 };
            (emit(output, |w| report.document.write(output.format, w)), code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let written = if output.format == Format::Json {
                let doc = output::error_json(name, e.kind(), &e.to_string());
                emit(output, |w| output::write_json(&doc, w))
            } else {
                Ok(())
            };
            (written, exit_code_for(&e))
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_DOMAIN);
    }
    ExitCode::from(code)
}

/// Bad parameter values count as usage errors; everything else is a
/// property of the requested physics (zero-energy mode, cap exceeded, ...).
fn exit_code_for(e: &RingError) -> u8 {
    match e {
        RingError::InvalidParameter { .. } | RingError::NotHalfOdd(_) | RingError::OddElectronCount(_) => {
            EXIT_USAGE
        }
        _ => EXIT_DOMAIN,
    }
}

fn emit(output: &OutputArgs, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> io::Result<()> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write(&mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)?;
            w.flush()
        }
    }
}
