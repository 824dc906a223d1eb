fn main() {
    let (code, report) = gfq_regular::cli::run(std::env::args_os());
    if code == gfq_regular::cli::EXIT_USAGE || code == gfq_regular::cli::EXIT_SIZE {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    std::process::exit(code);
}
