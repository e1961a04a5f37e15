package app.tool;

import org.cli.CommandLine;
import org.cli.Converter;
import org.cli.DefaultParser;
import org.cli.Option;
import org.cli.Options;
import org.cli.ParseException;

public class Tool {
    private final Options options = new Options()
        .addOption("v", false, "verbose")
        .addOption(new Option("o", true, "output"));

    static class Strict extends DefaultParser {
        private int seen;

        Strict() {
            seen = 0;
        }

        @Override
        protected void handleToken(String token) throws ParseException {
            seen++;
            if (token.isEmpty()) throw new ParseException("empty token");
        }
    }

    int run(String[] args) throws ParseException {
        Converter<Integer> number = new Converter<Integer>() {
            public Integer apply(String s) throws ParseException {
                return Integer.valueOf(s);
            }
        };
        CommandLine cl = new Strict().parse(options, args);
        Option out = options.getOption("o");
        out.longName = "output";
        out.longName += "-file";
        String v = cl.getOptionValue("o");
        return number.apply(v) + Option.UNLIMITED;
    }
}
