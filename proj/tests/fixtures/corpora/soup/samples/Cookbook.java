import org.soup.Document;
import org.soup.Elements;
import org.soup.Soup;

class Cookbook {
    void load() throws java.io.IOException {
        Document doc = Soup.connect("http://example.com").get();
        Elements news = doc.select("#news a");
        System.out.println(news.size());
    }

    void parseString() {
        String html = "<html><head><title>First parse</title></head></html>";
        Document doc = Soup.parse(html);
        doc.title();
    }
}
